use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::{BigInt, BigRational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qgarnier::bigfloat::{self, BigFloat};
use qgarnier::dynamics::{iterate_numeric, riccati_map};
use qgarnier::qhg::{self, Assignment, Case, Params};
use qgarnier::quiver::{self, Relabel};
use qgarnier::report::{CheckResult, Report, Status};
use qgarnier::seed::{confluence_point, confluence_seed, Seed};
use qgarnier::series::Leading;
use qgarnier::weylrep::{self, eval_word, random_point, Mode};
use qgarnier_cli::config::{Config, Output};
use qgarnier_cli::suite;

#[derive(Parser)]
#[command(name = "qgarnier", version, about = "Cluster realizations of affine Weyl groups and q-Garnier dynamics")]
struct Cli {
    /// File of `key = value` settings.
    #[arg(long, global = true)]
    config: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    precision_bits: Option<usize>,
    /// text or json
    #[arg(long, global = true)]
    output: Option<Output>,
    /// Keep per-check wall times in JSON output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum QuiverCmd {
    Show { name: String },
    ExportDot { name: String },
    ExportJson { name: String },
}

#[derive(Subcommand)]
enum Cmd {
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Applies a word to the initial seed of a catalog quiver.
    Mutate {
        name: String,
        #[arg(long)]
        word: String,
    },
    /// relations | tables | reductions | decompositions, for a name or `all`.
    Verify { what: String, name: String },
    Confluence {
        name: String,
        i: usize,
        j: usize,
        #[arg(long)]
        word: Option<String>,
    },
    DeriveRiccati { rep: String },
    Orbit {
        rep: String,
        /// Comma-separated start values of y1, y5, y9.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        start: Vec<f64>,
        #[arg(long)]
        steps: usize,
        /// Comma-separated alpha values; defaults to the standard point.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
    },
    CheckHypergeometric {
        case: String,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1e-17)]
        tol: f64,
    },
    CheckDegeneration { src: String, dst: String },
    /// Runs every acceptance criterion.
    Suite,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn config(cli: &Cli) -> Result<Config, Usage> {
    let mut c = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    c.apply_env()?;
    if let Some(s) = cli.seed {
        c.rng_seed = s;
    }
    if let Some(t) = cli.trials {
        c.set("randomized-trials", &t.to_string())?;
    }
    if let Some(t) = cli.tolerance {
        c.set("tolerance", &t.to_string())?;
    }
    if let Some(b) = cli.precision_bits {
        c.set("precision-bits", &b.to_string())?;
    }
    if let Some(o) = cli.output {
        c.output = o;
    }
    Ok(c)
}

fn emit(report: &Report, cfg: &Config, timing: bool) -> ExitCode {
    match cfg.output {
        Output::Text => print!("{}", report.to_text()),
        Output::Json => println!("{}", report.to_json(timing)),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn rep_names(name: &str) -> Vec<&str> {
    if name == "all" {
        quiver::CATALOG.to_vec()
    } else {
        vec![name]
    }
}

fn verify(what: &str, name: &str, cfg: &Config) -> Result<Report, Usage> {
    let opts = cfg.verify_options();
    let mut r = Report::new();
    for n in rep_names(name) {
        match what {
            "relations" => r.extend(weylrep::verify_relations(&weylrep::catalog(n)?, Mode::Randomized, &opts)),
            "tables" => r.extend(weylrep::verify_action_table(&weylrep::catalog(n)?, Mode::Exact, &opts)),
            "decompositions" => {
                let rep = weylrep::catalog(n)?;
                for (a, b) in &rep.decompositions {
                    r.push(weylrep::verify_decomposition(&rep, a, b, Mode::Randomized, &opts));
                }
            }
            "reductions" => {
                for c in weylrep::reduction_claims(n)? {
                    r.push(weylrep::verify_reduction(&c, Mode::Randomized, &opts));
                }
            }
            other => return Err(Usage(format!("unknown verification {other}"))),
        }
    }
    Ok(r)
}

fn confluence(name: &str, i: usize, j: usize, word: Option<&str>, cfg: &Config) -> Result<ExitCode, Usage> {
    let rep = weylrep::catalog(name)?;
    let n = rep.n();
    let relabel = Relabel::fill_hole(n, i);
    let Some(word) = word else {
        let s = Seed::initial(rep.quiver.clone());
        let lim = confluence_seed(&s, i, j, &relabel)?;
        let lim = lim.map_err(|_| Usage("initial coefficients diverge".into()))?;
        print!("{:?}", lim.quiver);
        for (k, c) in lim.coeffs.iter().enumerate() {
            println!("y{} = {c}", k + 1);
        }
        return Ok(ExitCode::SUCCESS);
    };
    let w = rep.word(word)?;
    let old_of = relabel.table(n, i)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let id = format!("{name}/confluence {i}->{j}/{word}");
    let mut result = CheckResult::pass(id.clone(), "randomized").with_detail("limit exists");
    'trials: for _ in 0..cfg.randomized_trials {
        let p = random_point(n - 1, &mut rng);
        let s = eval_word::<Leading>(&rep.quiver, &w, confluence_point(n, i, j, &relabel, &p))?;
        for (slot, &old) in old_of.iter().enumerate() {
            let v = if old == j { s.coeffs[i - 1].clone() * s.coeffs[j - 1].clone() } else { s.coeffs[old - 1].clone() };
            if v.valuation() < 0 {
                let detail = format!("coefficient y{} has ε-valuation {}", slot + 1, v.valuation());
                result = CheckResult::new(id.clone(), "randomized", Status::Divergent).with_detail(detail);
                break 'trials;
            }
        }
    }
    let mut r = Report::new();
    r.push(result);
    Ok(emit(&r, cfg, false))
}

fn hypergeometric(
    case: &str,
    q: Option<f64>,
    ts: Option<Vec<f64>>,
    alpha: Option<Vec<f64>>,
    tol: f64,
) -> Result<(bool, serde_json::Value), Usage> {
    let case: Case = case.parse()?;
    let mut p = qhg::standard_params::<f64>(case);
    if let Some(a) = alpha {
        p = Params { q: q.unwrap_or_else(|| a.iter().product()), alpha: a };
    } else if q.is_some() {
        return Err(Usage("--q needs --alpha".into()));
    }
    let ts = ts.unwrap_or_else(|| qhg::standard_ts::<f64>().to_vec());
    let map = riccati_map(case.name())?;
    let mut rows = Vec::new();
    let mut ok = true;
    for t in ts {
        let lin = qhg::verify_linear(case, &p, &t, tol)?;
        let cor = qhg::verify_riccati_solution(case, &map, &p, &t, Assignment::Corrected, tol)?;
        let pri = qhg::verify_riccati_solution(case, &map, &p, &t, Assignment::Printed, tol)?;
        ok &= lin < 1e-9 && cor < 1e-8;
        rows.push(serde_json::json!({
            "t": t,
            "linear": lin,
            "riccati": cor,
            "riccati_printed_assignment": pri,
        }));
    }
    Ok((ok, serde_json::json!({ "case": case.name(), "q": p.q, "alpha": p.alpha, "residuals": rows })))
}

fn degeneration(src: &str, dst: &str, cfg: &Config) -> Result<(bool, serde_json::Value), Usage> {
    bigfloat::set_precision(cfg.precision_bits);
    let t = BigRational::new(BigInt::from(1), BigInt::from(20));
    let rep = qhg::verify_degeneration::<BigFloat>(src.parse()?, dst.parse()?, &qhg::eps_schedule(6), &t, 1e-60)?;
    let table: Vec<_> = rep.table.iter().map(|(e, err)| serde_json::json!({ "eps": e, "error": err })).collect();
    Ok((
        rep.passes(0.15),
        serde_json::json!({
            "source": src,
            "target": dst,
            "matrix_limit_exact": rep.mismatches.is_empty(),
            "table": table,
            "slope": rep.slope,
        }),
    ))
}

fn json_exit(ok: bool, v: &serde_json::Value) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Usage> {
    let cfg = config(cli)?;
    Ok(match &cli.cmd {
        Cmd::Quiver(q) => {
            match q {
                QuiverCmd::Show { name } => {
                    let qv = quiver::catalog(name)?;
                    print!("{name} {qv:?}");
                    for (s, d, m) in qv.arrows() {
                        println!("{s} -> {d} x{m}");
                    }
                }
                QuiverCmd::ExportDot { name } => print!("{}", quiver::catalog(name)?.to_dot(name)),
                QuiverCmd::ExportJson { name } => println!("{}", quiver::catalog(name)?.to_json()),
            }
            ExitCode::SUCCESS
        }
        Cmd::Mutate { name, word } => {
            let rep = weylrep::catalog(name)?;
            let s = Seed::initial(rep.quiver.clone()).apply_word(&rep.word(word)?)?;
            print!("{:?}", s.quiver);
            for (k, c) in s.coeffs.iter().enumerate() {
                println!("y{} -> {}", k + 1, c.clone().reduce());
            }
            ExitCode::SUCCESS
        }
        Cmd::Verify { what, name } => emit(&verify(what, name, &cfg)?, &cfg, cli.timing),
        Cmd::Confluence { name, i, j, word } => confluence(name, *i, *j, word.as_deref(), &cfg)?,
        Cmd::DeriveRiccati { rep } => {
            print!("{}", riccati_map(rep)?.dump());
            ExitCode::SUCCESS
        }
        Cmd::Orbit { rep, start, steps, alpha } => {
            let map = riccati_map(rep)?;
            let params = match alpha {
                Some(a) => a.clone(),
                None => qhg::standard_params::<f64>(rep.parse()?).alpha,
            };
            let orbit = iterate_numeric(&map, start, &params, *steps, 1e-6)?;
            print!("{}", orbit.to_csv());
            ExitCode::SUCCESS
        }
        Cmd::CheckHypergeometric { case, q, t, alpha, tol } => {
            let (ok, v) = hypergeometric(case, *q, t.clone(), alpha.clone(), *tol)?;
            json_exit(ok, &v)
        }
        Cmd::CheckDegeneration { src, dst } => {
            let (ok, v) = degeneration(src, dst, &cfg)?;
            json_exit(ok, &v)
        }
        Cmd::Suite => emit(&suite::run(&cfg), &cfg, cli.timing),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

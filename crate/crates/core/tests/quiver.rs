use proptest::prelude::*;
use qgarnier::quiver::{catalog, q12, Quiver, Relabel, VertexMap};

fn skew(n: usize, upper: Vec<i64>) -> Quiver {
    let mut arrows = Vec::new();
    let mut it = upper.into_iter();
    for i in 1..=n {
        for j in i + 1..=n {
            let m = it.next().unwrap();
            if m != 0 {
                arrows.push((i, j, m));
            }
        }
    }
    Quiver::from_arrows(n, &arrows).unwrap()
}

fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (2usize..8).prop_flat_map(|n| {
        proptest::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |u| skew(n, u))
    })
}

proptest! {
    #[test]
    fn mutation_is_an_involution(q in arb_quiver(), k in 0usize..8) {
        let i = k % q.n() + 1;
        prop_assert_eq!(q.mutate(i).unwrap().mutate(i).unwrap(), q.clone());
        prop_assert!(q.mutate(i).unwrap().is_skew_symmetric());
    }

    #[test]
    fn mutation_commutes_with_reversal(q in arb_quiver(), k in 0usize..8) {
        let i = k % q.n() + 1;
        prop_assert_eq!(q.reverse().mutate(i).unwrap(), q.mutate(i).unwrap().reverse());
    }

    #[test]
    fn json_round_trip(q in arb_quiver()) {
        prop_assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn permutation_then_inverse_is_identity(q in arb_quiver(), a in 0usize..8, b in 0usize..8) {
        let n = q.n();
        let (i, j) = (a % n + 1, b % n + 1);
        prop_assume!(i != j);
        let s = VertexMap::transposition(n, i, j).unwrap();
        let c = VertexMap::cycle(n, &[i, j]).unwrap();
        prop_assert_eq!(s.compose(&s.inverse()), VertexMap::identity(n));
        prop_assert_eq!(q.permute(&s).unwrap().permute(&s).unwrap(), q.clone());
        prop_assert_eq!(q.permute(&c).unwrap(), q.permute(&s).unwrap());
    }
}

#[test]
fn degrees_are_balanced_on_q12() {
    let q = q12();
    assert_eq!(q.n(), 12);
    let total_out: i64 = (1..=12).map(|i| q.out_degree(i)).sum();
    let total_in: i64 = (1..=12).map(|i| q.in_degree(i)).sum();
    assert_eq!(total_out, total_in);
}

#[test]
fn confluence_drops_a_vertex() {
    let q = Quiver::from_arrows(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
    let c = q.confluence(3, 1, &Relabel::identity()).unwrap();
    assert_eq!(c.n(), 2);
    assert!(c.is_skew_symmetric());
    assert!(q.confluence(2, 2, &Relabel::identity()).is_err());
}

#[test]
fn catalog_rejects_unknown_names() {
    assert!(catalog("Q12").is_ok());
    assert!(catalog("Q99").is_err());
}

#[test]
fn malformed_input_is_rejected() {
    assert!(Quiver::from_matrix(&[vec![0, 1], vec![1, 0]]).is_err());
    assert!(Quiver::from_arrows(2, &[(1, 3, 1)]).is_err());
    assert!(Quiver::from_json("{\"n\": 2").is_err());
    assert!(q12().mutate(13).is_err());
}

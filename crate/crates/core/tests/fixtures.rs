//! Hand-checked values for the two-level system over GF(2).

use galqm::labels::{self, bra, ket, singlet, x, y, z, ENTANGLED_NAMES};
use galqm::state::bracket;
use galqm::tensor::{enumerate_entangled, joint_table, two_party_points, JOINT_OUTCOMES};
use galqm::{Observable, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[test]
fn single_particle_vectors() {
    let f = labels::gf2();
    let expect_ket = [('a', [1, 0]), ('b', [0, 1]), ('c', [1, 1])];
    for (l, c) in expect_ket {
        assert_eq!(ket(l).unwrap(), galqm::Ket::from_ints(&f, &c).unwrap());
    }
    let expect_bra = [('a', [0, 1]), ('b', [1, 0]), ('c', [1, 1])];
    for (l, c) in expect_bra {
        assert_eq!(bra(l).unwrap(), galqm::Bra::from_ints(&f, &c).unwrap());
    }
}

#[test]
fn barred_outcome_annihilates_its_own_state() {
    for r in ['a', 'b', 'c'] {
        for s in ['a', 'b', 'c'] {
            let v = bracket(&bra(r).unwrap(), &ket(s).unwrap()).unwrap();
            assert_eq!(v.abs_val(), u8::from(r != s), "<{r}bar|{s}>");
        }
    }
}

#[test]
fn spin_outcomes() {
    assert_eq!(z().outcomes(), &[bra('a').unwrap(), bra('b').unwrap()]);
    assert_eq!(x().outcomes(), &[bra('b').unwrap(), bra('c').unwrap()]);
    assert_eq!(y().outcomes(), &[bra('c').unwrap(), bra('a').unwrap()]);
}

/// P(spin = +1), P(spin = -1), expectation on a, b, c.
fn check_spin(obs: &Observable, expected: [(char, [Rational; 2], Rational); 3]) {
    for (state, probs, ev) in expected {
        let psi = ket(state).unwrap();
        let dist = obs.outcome_probabilities(&psi).unwrap();
        assert_eq!(dist.probs(), &probs, "{} on {state}", obs.label());
        assert_eq!(obs.expectation(&psi).unwrap(), ev, "<{}>_{state}", obs.label());
    }
}

#[test]
fn z_probabilities_and_expectations() {
    let h = r(1, 2);
    check_spin(
        &z(),
        [
            ('a', [r(0, 1), r(1, 1)], r(-1, 1)),
            ('b', [r(1, 1), r(0, 1)], r(1, 1)),
            ('c', [h, h], r(0, 1)),
        ],
    );
}

#[test]
fn cyclic_images() {
    // (XYZ) and (abc) permuted together: Z->X, a->b, b->c, c->a.
    let h = r(1, 2);
    check_spin(
        &x(),
        [
            ('b', [r(0, 1), r(1, 1)], r(-1, 1)),
            ('c', [r(1, 1), r(0, 1)], r(1, 1)),
            ('a', [h, h], r(0, 1)),
        ],
    );
    check_spin(
        &y(),
        [
            ('c', [r(0, 1), r(1, 1)], r(-1, 1)),
            ('a', [r(1, 1), r(0, 1)], r(1, 1)),
            ('b', [h, h], r(0, 1)),
        ],
    );
}

#[test]
fn two_party_counts() {
    let f = labels::gf2();
    let points = two_party_points(&f, 2);
    assert_eq!(points.len(), 15);
    assert_eq!(points.iter().filter(|s| s.is_product()).count(), 9);
    assert_eq!(enumerate_entangled(&f, 2).len(), 6);
}

#[test]
fn entangled_coordinates() {
    let f = labels::gf2();
    let expected: [(&str, [i64; 4]); 6] = [
        ("S", [0, 1, 1, 0]),
        ("ab", [1, 0, 0, 1]),
        ("bc", [1, 1, 1, 0]),
        ("ca", [0, 1, 1, 1]),
        ("abc", [1, 1, 0, 1]),
        ("acb", [1, 0, 1, 1]),
    ];
    assert_eq!(ENTANGLED_NAMES, expected);
    let mut listed: Vec<Vec<u32>> = enumerate_entangled(&f, 2)
        .iter()
        .map(|s| s.ket().indices())
        .collect();
    let mut named: Vec<Vec<u32>> = expected
        .iter()
        .map(|(_, c)| c.iter().map(|&v| v as u32).collect())
        .collect();
    listed.sort();
    named.sort();
    assert_eq!(listed, named);
}

#[test]
fn singlet_table() {
    let s = singlet();
    let [xo, yo, zo] = [x(), y(), z()];
    let half = r(1, 2);
    let third = r(1, 3);
    let zero = r(0, 1);
    let anti = ([zero, half, half, zero], r(-1, 1));
    let row2 = ([third, third, zero, third], third);
    let row3 = ([third, zero, third, third], third);
    let rows = [
        (&xo, &xo, anti),
        (&yo, &yo, anti),
        (&zo, &zo, anti),
        (&xo, &yo, row2),
        (&yo, &zo, row2),
        (&zo, &xo, row2),
        (&xo, &zo, row3),
        (&zo, &yo, row3),
        (&yo, &xo, row3),
    ];
    for (a, b, (probs, ev)) in rows {
        let t = joint_table(&s, a, b).unwrap();
        assert_eq!(t.probs, probs, "{}1{}2 over {:?}", a.label(), b.label(), JOINT_OUTCOMES);
        assert_eq!(t.expectation(), ev);
    }
}

#[test]
fn named_states_are_sums_of_label_products() {
    use galqm::tensor::tensor_ket;
    let sums: [(&str, [(char, char); 3]); 6] = [
        ("S", [('a', 'a'), ('b', 'b'), ('c', 'c')]),
        ("ab", [('a', 'b'), ('b', 'a'), ('c', 'c')]),
        ("bc", [('a', 'a'), ('b', 'c'), ('c', 'b')]),
        ("ca", [('a', 'c'), ('b', 'b'), ('c', 'a')]),
        ("abc", [('a', 'b'), ('b', 'c'), ('c', 'a')]),
        ("acb", [('a', 'c'), ('c', 'b'), ('b', 'a')]),
    ];
    for (name, terms) in sums {
        let mut acc = None;
        for (u, v) in terms {
            let t = tensor_ket(&ket(u).unwrap(), &ket(v).unwrap()).unwrap();
            acc = Some(match acc {
                None => t,
                Some(s) => t.try_add(&s).unwrap(),
            });
        }
        assert_eq!(acc.unwrap(), labels::entangled_state(name).unwrap(), "{name}");
    }
}

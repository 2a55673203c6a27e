//! Library results checked against small independent computations.

use std::collections::{BTreeSet, HashSet};

use galqm::chsh::{chsh_correlator, chsh_sweep, max_abs_correlator, ChshQuad, StateSelection};
use galqm::hv::chsh_classical_bound;
use galqm::labels::{self, x, xyz, z};
use galqm::observable::{all_spin_observables, unsigned_spin_observables};
use galqm::state::{bracket, nonzero_vectors, projective_points, Column};
use galqm::tensor::{
    enumerate_entangled, find_local_map, joint_table, local_orbits, local_orbits_exhaustive,
    singlet, tensor_bra, tensor_ket, two_party_points,
};
use galqm::{Field, Ket, Rational, TwoPartyState};

fn gf(p: u32, n: u32) -> Field {
    Field::new(p, n).unwrap()
}

/// Ascending coefficients of (a * b) over Z_p, no reduction.
fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// All monic polynomials of degree `d` as ascending coefficient vectors.
fn monic(p: u32, d: usize) -> Vec<Vec<u32>> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut k| {
            let mut c: Vec<u32> = (0..d)
                .map(|_| {
                    let v = k % p;
                    k /= p;
                    v
                })
                .collect();
            c.push(1);
            c
        })
        .collect()
}

/// Smallest monic irreducible of degree n by elimination: everything that is
/// a product of two monic factors of positive degree is reducible. Ordered by
/// coefficients with the constant term compared first.
fn sieve_modulus(p: u32, n: usize) -> Vec<u32> {
    let mut reducible = HashSet::new();
    for d in 1..n {
        for f in monic(p, d) {
            for g in monic(p, n - d) {
                reducible.insert(poly_mul(&f, &g, p));
            }
        }
    }
    monic(p, n)
        .into_iter()
        .filter(|f| !reducible.contains(f))
        .min()
        .expect("an irreducible exists")
}

#[test]
fn modulus_matches_sieve() {
    for (p, n) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let f = gf(p, n);
        assert_eq!(
            f.modulus().coeffs(),
            sieve_modulus(p, n as usize).as_slice(),
            "GF({p}^{n})"
        );
    }
}

/// Remainder of `a` modulo a monic `m`, padded to deg(m) coefficients.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let n = m.len() - 1;
    while a.len() > n {
        let lead = a.pop().unwrap();
        let shift = a.len() - n;
        for (i, &c) in m[..n].iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - c) * lead % p) % p;
        }
    }
    a.resize(n, 0);
    a
}

#[test]
fn arithmetic_matches_polynomial_oracle() {
    for (p, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
        let f = gf(p, n);
        let m = f.modulus().coeffs().to_vec();
        for a in f.elements() {
            for b in f.elements() {
                let sum: Vec<u32> = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x + y) % p).collect();
                assert_eq!((&a + &b).coeffs(), sum.as_slice());
                let prod = poly_rem(poly_mul(a.coeffs(), b.coeffs(), p), &m, p);
                assert_eq!((&a * &b).coeffs(), prod.as_slice(), "GF({p}^{n}): {a} * {b}");
            }
        }
    }
}

#[test]
fn inverses_match_search() {
    for (p, n) in [(2, 2), (3, 1), (3, 2), (7, 1), (2, 3)] {
        let f = gf(p, n);
        for a in f.nonzero_elements() {
            let found = f.elements().into_iter().find(|b| (&a * b).is_one()).unwrap();
            assert_eq!(a.inv().unwrap(), found);
        }
        assert!(f.zero().inv().is_err());
    }
}

#[test]
fn projective_points_match_scalar_classes() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = gf(p, n);
        let q = u64::from(f.order());
        for dim in 1..=4usize {
            if q.pow(dim as u32) > 1000 {
                continue;
            }
            // Each class is the set of all nonzero multiples of a vector.
            let classes: BTreeSet<BTreeSet<Ket>> = nonzero_vectors::<Column>(&f, dim)
                .iter()
                .map(|v| f.nonzero_elements().iter().map(|k| v.scale(k)).collect())
                .collect();
            let points: Vec<Ket> = projective_points(&f, dim);
            assert_eq!(points.len() as u64, (q.pow(dim as u32) - 1) / (q - 1));
            assert_eq!(points.len(), classes.len());
            for pt in &points {
                assert!(classes.iter().any(|c| c.contains(pt)));
            }
        }
    }
}

#[test]
fn entangled_vectors_match_determinant() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = gf(p, n);
        let by_det = nonzero_vectors::<Column>(&f, 4)
            .iter()
            .filter(|v| {
                let c = v.coords();
                !(&(&c[0] * &c[3]) - &(&c[1] * &c[2])).is_zero()
            })
            .count();
        assert_eq!(enumerate_entangled(&f, 2).len(), by_det, "q = {}", f.order());
    }
    assert_eq!(enumerate_entangled(&gf(3, 1), 2).len(), 48);
}

#[test]
fn product_states_factor_back() {
    for (p, n) in [(2, 1), (3, 1)] {
        let f = gf(p, n);
        let vs: Vec<Ket> = nonzero_vectors(&f, 2);
        for u in &vs {
            for v in &vs {
                let s = tensor_ket(u, v).unwrap();
                assert!(s.is_product());
                let (fu, fv) = s.factors().unwrap();
                let back = tensor_ket(&fu, &fv).unwrap();
                assert!(back.ket().same_ray(s.ket()).unwrap());
            }
        }
    }
}

/// P(x|psi) computed straight from the bracket counts of the four product
/// outcomes.
fn table_oracle(state: &TwoPartyState, a: &galqm::Observable, b: &galqm::Observable) -> [Rational; 4] {
    let mut support = [0i64; 4];
    let mut k = 0;
    for r in a.outcomes() {
        for t in b.outcomes() {
            let x = tensor_bra(r, t).unwrap();
            support[k] = i64::from(bracket(&x, state.ket()).unwrap().abs_val());
            k += 1;
        }
    }
    let total: i64 = support.iter().sum();
    support.map(|s| Rational::new(s, total))
}

#[test]
fn joint_tables_match_bracket_counts() {
    for (p, n) in [(2, 1), (3, 1)] {
        let f = gf(p, n);
        let obs = unsigned_spin_observables(&f);
        for s in two_party_points(&f, 2) {
            for a in &obs {
                for b in &obs {
                    assert_eq!(joint_table(&s, a, b).unwrap().probs, table_oracle(&s, a, b));
                }
            }
        }
    }
}

#[test]
fn product_state_tables_factorize() {
    for (p, n) in [(2, 1), (3, 1)] {
        let f = gf(p, n);
        let obs = unsigned_spin_observables(&f);
        let vs: Vec<Ket> = projective_points(&f, 2);
        for u in &vs {
            for v in &vs {
                let s = tensor_ket(u, v).unwrap();
                for a in &obs {
                    for b in &obs {
                        let pa = a.outcome_probabilities(u).unwrap();
                        let pb = b.outcome_probabilities(v).unwrap();
                        let t = joint_table(&s, a, b).unwrap();
                        for i in 0..2 {
                            for j in 0..2 {
                                assert_eq!(t.probs[2 * i + j], pa.probs()[i] * pb.probs()[j]);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn one_correlator_by_hand() {
    // <ZZ> + <ZX> + <XZ> - <XX> = -1 + 1/3 + 1/3 + 1 on the singlet.
    let quad = ChshQuad::new(&z(), &x(), &z(), &x());
    assert_eq!(chsh_correlator(&labels::singlet(), &quad).unwrap(), Rational::new(2, 3));
}

#[test]
fn every_entangled_gf2_state_maps_to_singlet() {
    let s = labels::singlet();
    for (name, _) in labels::ENTANGLED_NAMES {
        let from = labels::entangled_state(name).unwrap();
        let g = find_local_map(&from, &s).unwrap_or_else(|| panic!("{name} -> S"));
        assert_eq!(g.apply(&from).unwrap().canonicalize(), s);
    }
}

#[test]
fn generator_orbits_match_exhaustive_closure() {
    for (p, n) in [(2, 1), (3, 1)] {
        let f = gf(p, n);
        assert_eq!(local_orbits(&f), local_orbits_exhaustive(&f));
    }
    let sizes: Vec<(usize, bool)> = local_orbits(&gf(2, 1)).iter().map(|o| (o.len(), o.product)).collect();
    assert_eq!(sizes, vec![(9, true), (6, false)]);
}

#[test]
fn sweep_matches_direct_evaluation() {
    for (p, n) in [(2, 1), (3, 1)] {
        let f = gf(p, n);
        let sweep = chsh_sweep(&f, StateSelection::Singlet);
        let direct = max_abs_correlator(&singlet(&f), &all_spin_observables(&f)).unwrap();
        assert_eq!(sweep.max_abs, direct);
    }
}

/// Maximum CHSH value over all +-1 assignments to three settings per side.
fn brute_classical_bound() -> i64 {
    let mut best = 0;
    for bits in 0..64u32 {
        let v = |k: u32| if bits >> k & 1 == 1 { 1i64 } else { -1 };
        let (s1, s2) = ([v(0), v(1), v(2)], [v(3), v(4), v(5)]);
        for a in 0..3 {
            for aa in 0..3 {
                for b in 0..3 {
                    for bb in 0..3 {
                        for sign in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
                            let (x, xa) = (sign[0] * s1[a], sign[1] * s1[aa]);
                            let c = x * s2[b] + x * s2[bb] + xa * s2[b] - xa * s2[bb];
                            best = best.max(c.abs());
                        }
                    }
                }
            }
        }
    }
    best
}

#[test]
fn classical_bound_matches_brute_force() {
    let menu = xyz();
    let bound = chsh_classical_bound(&menu, &menu).unwrap();
    assert_eq!(bound, Rational::from_integer(brute_classical_bound()));
    assert_eq!(brute_classical_bound(), 2);
}

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relstab::corpus::Sampler;
use relstab::module::{counit, dual, hom_group, tensor_product};
use relstab::{
    ext_group, smith_normal_form, solve_congruence_system, syzygy, AlgebraElement, CoefficientRing, FiniteGroup,
    GModule, RMatrix,
};

const Z: CoefficientRing = CoefficientRing::Integers;

fn c(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n))
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k x k minors
fn minor_gcd(a: &[Vec<i128>], k: usize) -> i128 {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut g = 0i128;
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn to_matrix(a: &[Vec<i128>], cols: usize) -> RMatrix {
    let rows: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    if rows.is_empty() {
        return RMatrix::zeros(Z, 0, cols);
    }
    RMatrix::from_rows(Z, &rows).unwrap()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i128..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_matches_minor_gcds(a in small_matrix()) {
        let cols = a[0].len();
        let m = to_matrix(&a, cols);
        let d = smith_normal_form(&m).unwrap();
        prop_assert_eq!(&(&(&d.u * &d.s) * &d.v), &m);
        prop_assert_eq!(&(&d.u * &d.u_inv), &RMatrix::identity(Z, a.len()));
        prop_assert_eq!(&(&d.v * &d.v_inv), &RMatrix::identity(Z, cols));
        let diag = d.diagonal();
        let mut prod = 1i128;
        for (k, x) in diag.iter().enumerate() {
            prop_assert!(!x.is_negative());
            if k + 1 < diag.len() && !diag[k + 1].is_zero() {
                prop_assert!(diag[k + 1].is_multiple_of(x));
            }
            prod *= x.to_i128().unwrap();
            prop_assert_eq!(prod, minor_gcd(&a, k + 1).abs());
        }
    }

    #[test]
    fn solver_matches_brute_force(
        a in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 2), 2),
        b in proptest::collection::vec(-5i64..=5, 2),
        moduli in proptest::collection::vec(2i64..=6, 2),
    ) {
        let am = RMatrix::from_rows(Z, &a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>()).unwrap();
        let bm = RMatrix::from_rows(Z, &b.iter().map(|&x| vec![BigInt::from(x)]).collect::<Vec<_>>()).unwrap();
        let mods: Vec<BigInt> = moduli.iter().map(|&m| BigInt::from(m)).collect();
        let sol = solve_congruence_system(&am, &bm, &mods).unwrap();
        let l = moduli[0].lcm(&moduli[1]);
        let ok = |x: i64, y: i64| (0..2).all(|i| (a[i][0] * x + a[i][1] * y - b[i]).rem_euclid(moduli[i]) == 0);
        let brute = (0..l).any(|x| (0..l).any(|y| ok(x, y)));
        prop_assert_eq!(sol.is_some(), brute);
        if let Some(s) = sol {
            let x = s.particular.column(0);
            prop_assert!(ok(x[0].to_i64().unwrap().rem_euclid(l), x[1].to_i64().unwrap().rem_euclid(l)));
            for h in 0..s.homogeneous.cols() {
                let v = s.homogeneous.column(h);
                let hv: Vec<i64> = v.iter().map(|t| t.to_i64().unwrap().rem_euclid(l)).collect();
                prop_assert!((0..2).all(|i| (a[i][0] * hv[0] + a[i][1] * hv[1]).rem_euclid(moduli[i]) == 0));
            }
        }
    }
}

fn order_of(ring: CoefficientRing, factors: &[BigInt]) -> u64 {
    factors
        .iter()
        .map(|d| ring.effective_modulus(d).to_u64().unwrap())
        .product()
}

/// counts equivariant, well-defined matrices between two finite modules
fn brute_hom_count(m: &GModule, n: &GModule) -> u64 {
    let (ks, kt) = (m.rank(), n.rank());
    let d: Vec<i64> = m.moduli().iter().map(|x| x.to_i64().unwrap()).collect();
    let e: Vec<i64> = n.moduli().iter().map(|x| x.to_i64().unwrap()).collect();
    let cells: Vec<(usize, usize)> = (0..kt).flat_map(|i| (0..ks).map(move |j| (i, j))).collect();
    let mut count = 0;
    let mut x = vec![0i64; cells.len()];
    'outer: loop {
        let f = RMatrix::from_vec(m.ring(), kt, ks, x.iter().map(|&v| BigInt::from(v)).collect()).unwrap();
        let defined = cells.iter().all(|&(i, j)| (x[i * ks + j] * d[j]) % e[i] == 0);
        if defined && relstab::GModuleHom::new(m.clone(), n.clone(), f).is_ok() {
            count += 1;
        }
        for (p, &(i, _)) in cells.iter().enumerate() {
            x[p] += 1;
            if x[p] < e[i] {
                continue 'outer;
            }
            x[p] = 0;
        }
        break;
    }
    count
}

#[test]
fn hom_group_matches_enumeration() {
    let ring = CoefficientRing::prime_power(2, 2).unwrap();
    let s = Sampler::new(ring, c(2), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    while checked < 25 {
        let m = s.module(&mut rng).unwrap();
        let n = s.module(&mut rng).unwrap();
        let (om, on) = (order_of(ring, &m.factors()), order_of(ring, &n.factors()));
        if om > 64 || on > 64 || m.rank() * n.rank() > 6 {
            continue;
        }
        let h = hom_group(&m, &n).unwrap();
        assert_eq!(order_of(ring, &h.factors), brute_hom_count(&m, &n), "{m:?} {n:?}");
        checked += 1;
    }
}

#[test]
fn ext_dimension_shift() {
    for (seed, order) in (0..50u64).map(|s| (s, if s % 2 == 0 { 2 } else { 3 })) {
        let s = Sampler::new(Z, c(order), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = s.module(&mut rng).unwrap();
        let n = s.module(&mut rng).unwrap();
        let omega = syzygy(&m).unwrap();
        assert_eq!(
            ext_group(&m, &n, 2).unwrap(),
            ext_group(omega.sub(), &n, 1).unwrap(),
            "seed {seed}"
        );
    }
}

#[test]
fn diagonal_presentations_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let order = 2 + i % 2;
        let g = c(order);
        let k = 1 + (i % 3);
        let d: Vec<i64> = (0..k).map(|_| rand::Rng::gen_range(&mut rng, 0..7)).collect();
        let mut entries = Vec::new();
        for (r, &dr) in d.iter().enumerate() {
            for col in 0..k {
                let mut coeffs = vec![0; order];
                if r == col {
                    coeffs[0] = dr;
                }
                entries.push(AlgebraElement::from_i64(Z, g.clone(), &coeffs).unwrap());
            }
        }
        let m = GModule::from_rg_presentation(Z, g.clone(), k, k, &entries).unwrap();
        let mut expected: Vec<i64> = d
            .iter()
            .filter(|&&x| x != 1 && x != -1)
            .flat_map(|&x| std::iter::repeat_n(x.abs(), order))
            .collect();
        expected.sort_by_key(|&x| if x == 0 { i64::MAX } else { x });
        let mut got: Vec<i64> = m.factors().iter().map(|x| x.to_i64().unwrap()).collect();
        got.sort_by_key(|&x| if x == 0 { i64::MAX } else { x });
        // ⊕ (Z/d)G: factor multiset of the torsion part up to reordering into a chain
        let chain = relstab::smith_normal_form(&RMatrix::diagonal(
            Z,
            &expected.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(),
        ))
        .unwrap()
        .diagonal()
        .into_iter()
        .filter(|x| x != &BigInt::from(1))
        .map(|x| x.to_i64().unwrap())
        .collect::<Vec<_>>();
        let mut chain = chain;
        chain.sort_by_key(|&x| if x == 0 { i64::MAX } else { x });
        assert_eq!(got, chain, "d = {d:?}");
        m.validate().unwrap();
    }
}

#[test]
fn tensor_is_symmetric_and_associative_on_restrictions() {
    let s = Sampler::new(Z, c(3), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let a = s.module(&mut rng).unwrap();
        let b = s.module(&mut rng).unwrap();
        let cc = s.cyclic(&mut rng, false).unwrap();
        let ab = tensor_product(&a, &b).unwrap();
        assert_eq!(ab.factors(), tensor_product(&b, &a).unwrap().factors());
        let l = tensor_product(&ab, &cc).unwrap();
        let r = tensor_product(&a, &tensor_product(&b, &cc).unwrap()).unwrap();
        assert_eq!(l.factors(), r.factors());
        l.validate().unwrap();
    }
}

#[test]
fn double_dual_and_counit_witnesses() {
    let s = Sampler::new(Z, c(2), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let g = s.gproj(&mut rng).unwrap();
        assert_eq!(dual(&dual(&g).unwrap()).unwrap().factors(), g.factors());
        let m = s.module(&mut rng).unwrap();
        assert!(counit(&m).unwrap().verify());
    }
}

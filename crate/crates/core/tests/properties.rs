//! Property tests over random small codes, gates and quadratic forms.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dcss_core::code::coset_reps;
use dcss_core::codespace::{standard_form, CssCode};
use dcss_core::diaggate::{
    diagonal_from_pauli_exact, pauli_coefficients_exact, DyadicDiagonalGate, LocalFactor,
};
use dcss_core::gencoeff::{
    gate_from_constraints, gc_matrix, induced_logical, norm_test, physical_constraints_for_target,
    preserves, LogicalDiagonal,
};
use dcss_core::oracle::brute_force_preserves;
use dcss_core::qforms::{character_sums, QuadraticForm};
use dcss_core::{BitMatrix, BitVector, LinearCode};

fn rows_from(n: usize, raw: &[u64]) -> Vec<BitVector> {
    raw.iter()
        .map(|&r| BitVector::from_index(n, r & ((1 << n) - 1)))
        .collect()
}

fn code_from(n: usize, raw: &[u64]) -> LinearCode {
    LinearCode::from_rows(n, rows_from(n, raw)).unwrap()
}

/// All words of a code by brute force over `F_2^n` (`n` small).
fn members(c: &LinearCode) -> Vec<BitVector> {
    (0..1u64 << c.n())
        .map(|i| BitVector::from_index(c.n(), i))
        .filter(|v| c.contains(v).unwrap())
        .collect()
}

fn random_css(rng: &mut ChaCha8Rng, n_max: usize) -> CssCode {
    let n = rng.gen_range(2..=n_max);
    let k1 = rng.gen_range(1..=n);
    let c1 = LinearCode::from_rows(
        n,
        (0..k1)
            .map(|_| BitVector::from_index(n, rng.gen_range(0..1u64 << n)))
            .collect(),
    )
    .unwrap();
    let basis = c1.gen().rows().to_vec();
    let k2 = rng.gen_range(0..=basis.len());
    let sub = (0..k2)
        .map(|_| {
            basis.iter().fold(BitVector::zeros(n), |acc, b| {
                if rng.gen() {
                    acc.xor(b)
                } else {
                    acc
                }
            })
        })
        .collect();
    let c2 = LinearCode::from_rows(n, sub).unwrap();
    let y = BitVector::from_index(n, rng.gen_range(0..1u64 << n));
    CssCode::new(c1, c2, y).unwrap()
}

fn random_table(rng: &mut ChaCha8Rng, n: usize, level: u32) -> DyadicDiagonalGate {
    let entries = (0..1u64 << n)
        .map(|i| (BitVector::from_index(n, i), rng.gen_range(0..1u32 << level)))
        .collect();
    DyadicDiagonalGate::from_table(n, level, entries).unwrap()
}

fn random_factors(rng: &mut ChaCha8Rng, n: usize) -> DyadicDiagonalGate {
    let fs = (0..rng.gen_range(0..5))
        .map(|_| {
            let size = rng.gen_range(1..=n.min(3));
            let mut support: Vec<usize> = (0..n).collect();
            for i in 0..size {
                let j = rng.gen_range(i..n);
                support.swap(i, j);
            }
            support.truncate(size);
            let level = rng.gen_range(1..=4);
            let table = (0..1u64 << size)
                .map(|i| (BitVector::from_index(size, i), rng.gen_range(0..1u32 << level)))
                .collect();
            LocalFactor::new(support, level, table).unwrap()
        })
        .collect();
    DyadicDiagonalGate::from_factors(n, fs).unwrap()
}

/// Gate constant on every coset of C2 inside C1 + y.
fn coset_constant(rng: &mut ChaCha8Rng, code: &CssCode, level: u32) -> DyadicDiagonalGate {
    let per: Vec<u32> = (0..1u64 << code.k())
        .map(|_| rng.gen_range(0..1u32 << level))
        .collect();
    let mut entries = BTreeMap::new();
    code.c1()
        .for_each_shifted(code.y(), 20, |_, u| {
            let alpha = code.logical_label(&u.xor(code.y()));
            entries.insert(u.clone(), per[alpha.to_index() as usize]);
        })
        .unwrap();
    DyadicDiagonalGate::from_table(code.n(), level, entries).unwrap()
}

fn krawtchouk(n: i64, j: i64, i: i64) -> i64 {
    let binom = |n: i64, r: i64| -> i64 {
        if r < 0 || r > n {
            0
        } else {
            (0..r).fold(1, |acc, t| acc * (n - t) / (t + 1))
        }
    };
    (0..=j)
        .map(|s| if s % 2 == 0 { 1 } else { -1 } * binom(i, s) * binom(n - i, j - s))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(n in 1usize..12, raw in prop::collection::vec(any::<u64>(), 0..10)) {
        let m = BitMatrix::from_rows(n, rows_from(n, &raw)).unwrap();
        let r = m.rref();
        let again = r.matrix.rref();
        prop_assert_eq!(&again.matrix, &r.matrix);
        prop_assert_eq!(again.rank, r.rank);
        prop_assert_eq!(r.rank, m.transpose().rank());
    }

    #[test]
    fn dual_is_an_involution(n in 1usize..=14, raw in prop::collection::vec(any::<u64>(), 0..8)) {
        let c = code_from(n, &raw);
        let d = c.dual();
        prop_assert_eq!(c.k() + d.k(), n);
        prop_assert_eq!(&d.dual(), &c);
        for g in c.gen().rows() {
            for h in d.gen().rows() {
                prop_assert!(!g.dot(h));
            }
        }
    }

    #[test]
    fn macwilliams_identity(n in 1usize..=12, raw in prop::collection::vec(any::<u64>(), 0..7)) {
        let c = code_from(n, &raw);
        let z = BitVector::zeros(n);
        let a = c.weight_distribution(&z).unwrap();
        let b = c.dual().weight_distribution(&z).unwrap();
        let size = 1i64 << c.k();
        for j in 0..=n {
            let s: i64 = a.iter().map(|(&i, &m)| m as i64 * krawtchouk(n as i64, j as i64, i as i64)).sum();
            prop_assert_eq!(s % size, 0);
            prop_assert_eq!(s / size, *b.get(&j).unwrap_or(&0) as i64);
        }
    }

    #[test]
    fn cosets_partition(n in 1usize..=8, raw in prop::collection::vec(any::<u64>(), 1..6), pick in any::<u64>()) {
        let sup = code_from(n, &raw);
        let sub_rows: Vec<BitVector> = sup.gen().rows().iter().enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1).map(|(_, r)| r.clone()).collect();
        let sub = LinearCode::from_rows(n, sub_rows).unwrap();
        let reps = coset_reps(&sub, &sup).unwrap();
        prop_assert_eq!(reps.len(), 1usize << (sup.k() - sub.k()));
        let mut seen = std::collections::BTreeSet::new();
        for r in &reps {
            sub.for_each_shifted(r, 20, |_, u| { seen.insert(u.clone()); }).unwrap();
        }
        let all = members(&sup);
        prop_assert_eq!(seen.len(), all.len());
        prop_assert!(all.iter().all(|v| seen.contains(v)));
    }

    #[test]
    fn css_logicals_are_dual(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_css(&mut rng, 10);
        let prod = code.gx().mul_transpose(code.gz());
        prop_assert_eq!(prod, BitMatrix::identity(code.k()));
        for g in code.gz().rows() {
            for s in code.c2().gen().rows() {
                prop_assert!(!g.dot(s));
            }
        }
        code.validate().unwrap();
    }

    #[test]
    fn encoded_states_orthonormal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_css(&mut rng, 8);
        let states: Vec<_> = (0..1u64 << code.k())
            .map(|i| code.encode_basis(&BitVector::from_index(code.k(), i)).unwrap())
            .collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let ip = a.inner(b).norm();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ip - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ft_check_is_monotone(seed in any::<u64>(), mask in any::<u64>(), drop in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_css(&mut rng, 10);
        let n = code.n();
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<usize> = s.iter().copied().filter(|i| drop >> i & 1 == 0).collect();
        if code.ft_local_check(&s) {
            prop_assert!(code.ft_local_check(&sub));
        }
        // fails exactly when the support covers a nonzero C2 word
        let supp = BitVector::from_support(n, &s);
        let covers = members(code.c2()).iter().any(|w| !w.is_zero() && w.and(&supp) == *w);
        prop_assert_eq!(code.ft_local_check(&s), !covers);
    }

    #[test]
    fn representations_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=8);
        let g = random_factors(&mut rng, n);
        let t = g.to_table(10).unwrap();
        let back = DyadicDiagonalGate::from_factors(n, t.to_factors().unwrap()).unwrap();
        for i in 0..1u64 << n {
            let u = BitVector::from_index(n, i);
            prop_assert_eq!(g.entry_exact(&u).unwrap(), t.entry_exact(&u).unwrap());
            prop_assert_eq!(g.entry_exact(&u).unwrap(), back.entry_exact(&u).unwrap());
        }
        let w = DyadicDiagonalGate::weight_rule(n, 3, rng.gen_range(0..8)).unwrap();
        let wt = w.to_table(10).unwrap();
        for i in 0..1u64 << n {
            let u = BitVector::from_index(n, i);
            prop_assert_eq!(w.entry(&u).unwrap(), wt.entry(&u).unwrap());
        }
    }

    #[test]
    fn double_walsh_recovers_diagonal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let g = random_factors(&mut rng, n);
        let f = pauli_coefficients_exact(&g, 10).unwrap();
        let d = diagonal_from_pauli_exact(&f, n);
        for (i, v) in d.iter().enumerate() {
            prop_assert_eq!(v, &g.entry_exact(&BitVector::from_index(n, i as u64)).unwrap());
        }
    }

    #[test]
    fn compose_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=8);
        let a = random_factors(&mut rng, n);
        let level = rng.gen_range(1..=4);
        let b = random_table(&mut rng, n, level);
        let c = random_factors(&mut rng, n);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        let with_id = a.compose(&DyadicDiagonalGate::identity(n)).unwrap();
        for i in 0..1u64 << n {
            let u = BitVector::from_index(n, i);
            prop_assert_eq!(left.entry_exact(&u).unwrap(), right.entry_exact(&u).unwrap());
            prop_assert_eq!(with_id.entry_exact(&u).unwrap(), a.entry_exact(&u).unwrap());
        }
    }

    #[test]
    fn preservation_criteria_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_css(&mut rng, 9);
        let level = rng.gen_range(1..=4);
        let gate = match rng.gen_range(0..3) {
            0 => coset_constant(&mut rng, &code, level),
            1 => random_table(&mut rng, code.n(), level),
            _ => random_factors(&mut rng, code.n()),
        };
        let p = preserves(&code, &gate).unwrap();
        prop_assert_eq!(norm_test(&code, &gate).unwrap(), p);
        prop_assert_eq!(brute_force_preserves(&code, &gate).unwrap(), p);
        prop_assert!(gc_matrix(&code, &gate).unwrap().total_weight().is_one());
    }

    #[test]
    fn target_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_css(&mut rng, 10);
        let level = rng.gen_range(1..=5);
        let target = LogicalDiagonal::new(
            code.k(),
            level,
            (0..1u64 << code.k()).map(|_| rng.gen_range(0..1u32 << level)).collect(),
        ).unwrap();
        let cs = physical_constraints_for_target(&code, &target).unwrap();
        let g = gate_from_constraints(&code, &cs).unwrap();
        prop_assert!(preserves(&code, &g).unwrap());
        prop_assert_eq!(induced_logical(&code, &g).unwrap(), target);
    }

    #[test]
    fn shift_covariance(seed in any::<u64>()) {
        // preserving (C1 + y, d) is preserving (C1, u -> d_{u ⊕ y})
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_css(&mut rng, 8);
        let n = code.n();
        let level = rng.gen_range(1..=3);
        let gate = if rng.gen() { coset_constant(&mut rng, &code, level) } else { random_table(&mut rng, n, level) };
        let entries = (0..1u64 << n)
            .map(|i| {
                let u = BitVector::from_index(n, i);
                let t = gate.entry(&u.xor(code.y())).unwrap();
                (u, t)
            })
            .collect();
        let moved = DyadicDiagonalGate::from_table(n, level, entries).unwrap();
        let base = code.with_y(BitVector::zeros(n)).unwrap();
        prop_assert_eq!(preserves(&code, &gate).unwrap(), preserves(&base, &moved).unwrap());
        if preserves(&code, &gate).unwrap() {
            prop_assert_eq!(induced_logical(&code, &gate).unwrap(), induced_logical(&base, &moved).unwrap());
        }
    }

    #[test]
    fn standard_form_keeps_the_group(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=5);
        let mut xs: Vec<BitVector> = Vec::new();
        let mut zs: Vec<BitVector> = Vec::new();
        for _ in 0..40 {
            let x = BitVector::from_index(n, rng.gen_range(0..1u64 << n));
            let z = BitVector::from_index(n, rng.gen_range(0..1u64 << n));
            let commutes = xs.iter().zip(&zs).all(|(a, b)| !(x.dot(b) ^ z.dot(a)));
            let rows: Vec<BitVector> = xs.iter().zip(&zs).map(|(a, b)| a.concat(b)).collect();
            let before = BitMatrix::from_rows(2 * n, rows.clone()).unwrap().rank();
            let mut with = rows;
            with.push(x.concat(&z));
            let after = BitMatrix::from_rows(2 * n, with).unwrap().rank();
            if commutes && after > before && xs.len() < n {
                xs.push(x);
                zs.push(z);
            }
        }
        prop_assume!(!xs.is_empty());
        let input: Vec<BitVector> = xs.iter().zip(&zs).map(|(a, b)| a.concat(b)).collect();
        let sf = standard_form(
            &BitMatrix::from_rows(n, xs.clone()).unwrap(),
            &BitMatrix::from_rows(n, zs.clone()).unwrap(),
        ).unwrap();
        let out = sf.symplectic_rows();
        let r_in = BitMatrix::from_rows(2 * n, input.clone()).unwrap().rank();
        let mut both = input;
        both.extend(out.iter().cloned());
        prop_assert_eq!(out.len(), r_in);
        prop_assert_eq!(BitMatrix::from_rows(2 * n, both).unwrap().rank(), r_in);
        let (sub, sup) = dcss_core::tower_from_standard_form(&sf).unwrap();
        prop_assert!(sub.is_subcode_of(&sup));
    }

    #[test]
    fn character_sum_identity(m in 1usize..=5, bits in any::<u64>()) {
        // T_a^2 = 2^m S_a, S_a summing over the radical of R
        let mut rows = vec![BitVector::zeros(m); m];
        let mut b = 0;
        for (i, row) in rows.iter_mut().enumerate() {
            for j in i + 1..m {
                row.set(j, bits >> b & 1 == 1);
                b += 1;
            }
        }
        let q = QuadraticForm::new(BitMatrix::from_rows(m, rows).unwrap()).unwrap();
        let r = q.symplectic();
        let t = character_sums(&q).unwrap();
        let radical: Vec<u64> = (0..1u64 << m)
            .filter(|&x| r.mul_vec(&BitVector::from_index(m, x)).is_zero())
            .collect();
        for a in 0..1u64 << m {
            let s: i64 = radical
                .iter()
                .map(|&x| if q.eval(x) ^ ((a & x).count_ones() % 2 == 1) { -1 } else { 1 })
                .sum();
            prop_assert_eq!(t[a as usize] * t[a as usize], (1i64 << m) * s);
        }
    }
}

//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them).

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use gstower::fp::FreeAlgebra;
use gstower::group_algebra::{hilbert_from_table, GroupTable};
use gstower::gspoly::{self, GsPolynomial, Rational};
use gstower::magnus;
use gstower::presentation::{self, Presentation, VinbergVerdict};
use gstower::tower;
use gstower::word::GroupWord;
use gstower::Valuation;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn criterion<F: FnOnce() + UnwindSafe>(name: &str, body: F) {
    let outcome = catch_unwind(body);
    match outcome {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(e) => {
            println!("acceptance {name}: FAIL");
            resume_unwind(e);
        }
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn pres(p: u32, gens: &[&str], relators: &[&str]) -> Presentation {
    let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    let words = relators
        .iter()
        .map(|t| gstower::word::parse_word(t, &names).unwrap())
        .collect();
    Presentation::new(p, names, words).unwrap()
}

#[test]
fn criterion_1_finite_group_oracle_equality() {
    criterion("1 (finite-group oracle equality)", || {
        let start = Instant::now();
        struct Fixture {
            presentation: Presentation,
            table: GroupTable,
            p: u32,
            max_deg: usize,
            expect_prefix: &'static [u64],
        }
        let z3 = GroupTable::cyclic(3);
        let z5 = GroupTable::cyclic(5);
        let fixtures = [
            Fixture {
                presentation: pres(3, &["a"], &["a^3"]),
                table: z3.clone(),
                p: 3,
                max_deg: 5,
                expect_prefix: &[1, 1, 1],
            },
            Fixture {
                presentation: pres(3, &["a"], &["a^9"]),
                table: GroupTable::cyclic(9),
                p: 3,
                max_deg: 10,
                expect_prefix: &[1, 1, 1, 1, 1, 1, 1, 1, 1],
            },
            Fixture {
                presentation: pres(3, &["a", "b"], &["a^3", "b^3", "[a,b]"]),
                table: GroupTable::direct_product(&z3, &z3),
                p: 3,
                max_deg: 6,
                expect_prefix: &[1, 2, 3, 2, 1],
            },
            Fixture {
                presentation: pres(5, &["a"], &["a^5"]),
                table: z5.clone(),
                p: 5,
                max_deg: 7,
                expect_prefix: &[1, 1, 1, 1, 1],
            },
            Fixture {
                presentation: pres(5, &["a", "b"], &["a^5", "b^5", "[a,b]"]),
                table: GroupTable::direct_product(&z5, &z5),
                p: 5,
                max_deg: 10,
                expect_prefix: &[1, 2, 3, 4, 5, 4, 3, 2, 1],
            },
        ];
        for f in fixtures {
            let via_pres = f.presentation.hilbert_coeffs(f.max_deg).unwrap();
            let via_table = hilbert_from_table(&f.table, f.p, f.max_deg).unwrap();
            assert!(
                via_pres.stabilized(),
                "pipeline detects the finite quotient"
            );
            assert!(via_table.stabilized());
            assert_eq!(via_pres.coeffs(), via_table.coeffs(), "entrywise equality");
            assert_eq!(&via_pres.coeffs()[..f.expect_prefix.len()], f.expect_prefix);
            assert_eq!(via_pres.total() as usize, f.table.order(), "mass formula");
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(60),
            "runtime {elapsed:?} exceeds 60 s"
        );
    });
}

#[test]
fn criterion_2_free_group_law() {
    criterion("2 (free pro-p group law c_n = d^n)", || {
        let start = Instant::now();
        let free2 = pres(3, &["a", "b"], &[]);
        let h2 = free2.hilbert_coeffs(10).unwrap();
        let expect2: Vec<u64> = (0..10).map(|n| 1u64 << n).collect();
        assert_eq!(h2.coeffs(), expect2.as_slice());

        let free3 = pres(3, &["a", "b", "c"], &[]);
        let h3 = free3.hilbert_coeffs(8).unwrap();
        let expect3: Vec<u64> = (0..8).map(|n| 3u64.pow(n)).collect();
        assert_eq!(h3.coeffs(), expect3.as_slice());

        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(120),
            "runtime {elapsed:?} exceeds 120 s"
        );
    });
}

/// Random word over d generators: products of powered atoms with bounded
/// nesting, so depths spread across the truncation range.
fn random_word(rng: &mut StdRng, d: usize, depth_budget: usize) -> GroupWord {
    let n_terms = rng.gen_range(1..=3);
    let terms = (0..n_terms)
        .map(|_| {
            let atom = if depth_budget == 0 || rng.gen_ratio(3, 5) {
                GroupWord::gen(rng.gen_range(0..d))
            } else if rng.gen_bool(0.5) {
                GroupWord::commutator(
                    random_word(rng, d, depth_budget - 1),
                    random_word(rng, d, depth_budget - 1),
                )
            } else {
                random_word(rng, d, depth_budget - 1)
            };
            let exp = rng.gen_range(-4i64..=4);
            if exp == 1 {
                atom
            } else {
                GroupWord::power(atom, exp)
            }
        })
        .collect();
    GroupWord::product(terms)
}

#[test]
fn criterion_3_depth_law_suite() {
    criterion("3 (depth laws on 500 random words per law)", || {
        let alg = FreeAlgebra::new(2, 12, 3).unwrap();
        let bound = alg.max_degree();
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut violations = 0u32;

        // power law: depth(x^p) >= p * depth(x)
        for i in 0..500 {
            let x = random_word(&mut rng, 2, 2);
            let dx = magnus::depth(&x, alg).unwrap();
            let dxp = magnus::depth(&GroupWord::power(x, 3), alg).unwrap();
            if let Valuation::Finite(n) = dx {
                if !dxp.at_least((3 * n).min(bound + 1)) {
                    violations += 1;
                    eprintln!("power law violated at sample {i}: {dx:?} -> {dxp:?}");
                }
            }
        }

        // commutator law: depth([x,y]) >= depth(x) + depth(y)
        for i in 0..500 {
            let x = random_word(&mut rng, 2, 2);
            let y = random_word(&mut rng, 2, 2);
            let dx = magnus::depth(&x, alg).unwrap();
            let dy = magnus::depth(&y, alg).unwrap();
            let dc = magnus::depth(&GroupWord::commutator(x, y), alg).unwrap();
            if let (Valuation::Finite(n), Valuation::Finite(m)) = (dx, dy) {
                if !dc.at_least((n + m).min(bound + 1)) {
                    violations += 1;
                    eprintln!("commutator law violated at sample {i}");
                }
            }
        }

        // product law: depth(xy) >= min(depth(x), depth(y))
        for i in 0..500 {
            let x = random_word(&mut rng, 2, 2);
            let y = random_word(&mut rng, 2, 2);
            let dx = magnus::depth(&x, alg).unwrap();
            let dy = magnus::depth(&y, alg).unwrap();
            let dp = magnus::depth(&GroupWord::product(vec![x, y]), alg).unwrap();
            let min_needed = match (dx, dy) {
                (Valuation::Finite(n), Valuation::Finite(m)) => n.min(m),
                (Valuation::Finite(n), _) | (_, Valuation::Finite(n)) => n,
                _ => bound + 1,
            };
            if !dp.at_least(min_needed.min(bound + 1)) {
                violations += 1;
                eprintln!("product law violated at sample {i}");
            }
        }

        assert_eq!(violations, 0, "depth-law violations found");
    });
}

#[test]
fn criterion_4_vinberg_and_quadratic_ground_truth() {
    criterion("4 (product criterion and quadratic witnesses)", || {
        // Exact product at t = 1/2 for the order-3 cyclic fixture.
        let p = pres(3, &["a"], &["a^3"]);
        let h = p.hilbert_coeffs(6).unwrap();
        let poly = p.gs_polynomial(6).unwrap();
        let t = rat(1, 2);
        let product = h.eval_prefix(&t) * poly.eval(&t);
        assert_eq!(product, rat(35, 32));
        assert!(product >= Rational::one());
        assert_eq!(
            presentation::vinberg_check(&h, &poly, &t).unwrap(),
            VinbergVerdict::CertifiedHolds
        );

        // 1000 random quadratics 1 - Dt + Rt^2 against the discriminant
        // and root-location ground truth, all in exact arithmetic.
        let mut rng = StdRng::seed_from_u64(0x7175_6164);
        let tol = rat(1, 1 << 30);
        for trial in 0..1000 {
            let d_num = rng.gen_range(1i64..=40);
            let d_den = rng.gen_range(1i64..=6);
            let r_num = rng.gen_range(0i64..=60);
            let r_den = rng.gen_range(1i64..=6);
            let d_coef = rat(d_num, d_den);
            let r_coef = rat(r_num, r_den);
            let poly =
                GsPolynomial::from_coeffs(&[rat_int(1), -d_coef.clone(), r_coef.clone()]).unwrap();
            let witness = poly.negativity_witness(&tol).unwrap();

            let expected = if r_coef.is_zero() {
                // 1 - Dt negative on (1/D, 1) iff D > 1
                d_coef > Rational::one()
            } else {
                let disc = &d_coef * &d_coef - rat_int(4) * &r_coef;
                let vertex = &d_coef / (rat_int(2) * &r_coef);
                let at_one = Rational::one() - &d_coef + &r_coef;
                disc.is_positive() && (vertex < Rational::one() || at_one.is_negative())
            };
            assert_eq!(
                witness.is_some(),
                expected,
                "trial {trial}: D={d_coef}, R={r_coef}"
            );
            if let Some(w) = witness {
                assert!(poly.eval(&w.t0).is_negative());
                assert!(!poly.eval(&w.inf_lo).is_negative());
                assert!(&w.inf_hi - &w.inf_lo <= tol);
            }
        }
    });
}

#[test]
fn criterion_5_theorem_and_corollary_constants() {
    criterion("5 (growth-theorem and corollary constants)", || {
        let (spec, _dmodel, cmodel) = tower::cyclotomic_setup(3, 13, 1, 0).unwrap();
        let report = spec.check_hypotheses();
        assert!(report.all_pass());
        let c4 = &report.conditions[3];
        assert_eq!(c4.lhs, BigInt::from(676));
        assert_eq!(c4.rhs, BigInt::from(352));

        let c_max = tower::thm_constant(&spec, &cmodel).unwrap();
        assert_eq!(c_max, rat(44, 13));
        assert!(c_max < rat(13, 2), "remark inequality 44/13 < 13/2");

        // ell = 7: the general checker passes while the corollary gate
        // refuses (it requires ell >= 11).
        let (spec7, _, cmodel7) = tower::cyclotomic_setup(3, 7, 1, 0).unwrap();
        let report7 = spec7.check_hypotheses();
        assert!(report7.all_pass());
        let c4 = &report7.conditions[3];
        assert_eq!(c4.lhs, BigInt::from(196));
        assert_eq!(c4.rhs, BigInt::from(160));
        assert!(tower::thm_constant(&spec7, &cmodel7).is_ok());
        assert!(tower::corollary_constant(3, 7, 1, 0).is_err());

        assert_eq!(tower::corollary_constant(3, 13, 1, 0).unwrap(), rat(44, 13));
    });
}

#[test]
fn criterion_6_growth_table() {
    criterion("6 (cyclotomic growth table rows and bounds)", || {
        let start = Instant::now();
        let (spec, dmodel, cmodel) = tower::cyclotomic_setup(3, 13, 1, 0).unwrap();
        let table = tower::growth_table(&spec, &dmodel, &cmodel, 0, 6, 1).unwrap();

        let row0 = &table.rows[0];
        assert_eq!(row0.profile.d_n, BigUint::from(24u32));
        assert_eq!(row0.profile.r_n, BigUint::from(83u32));
        assert_eq!(row0.profile.r_prime_n, BigUint::from(48u32));
        let row1 = &table.rows[1];
        assert_eq!(row1.profile.d_n, BigUint::from(50u32));
        assert_eq!(row1.profile.r_n, BigUint::from(339u32));
        assert_eq!(row1.profile.r_prime_n, BigUint::from(100u32));

        // the exact integer comparisons behind the certification
        let (lhs0, rhs0) = (
            2u64 * 83 * 83 * 24 * 24,
            8u64 * 83u64.pow(3) + 48 * 24u64.pow(3),
        );
        assert_eq!((lhs0, rhs0), (7_936_128, 5_237_848));
        assert!(lhs0 > rhs0);
        let (lhs1, rhs1) = (
            2u64 * 339 * 339 * 50 * 50,
            8u64 * 339u64.pow(3) + 100 * 50u64.pow(3),
        );
        assert_eq!((lhs1, rhs1), (574_605_000, 324_165_752));
        assert!(lhs1 > rhs1);
        assert!(row0.certified && row1.certified);
        assert!(gspoly::certified_negativity(&rat_int(24), &rat_int(83), &rat_int(48), 3).unwrap());
        assert!(
            gspoly::certified_negativity(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap()
        );

        assert_eq!(row0.rho_bound, Some(rat(83, 12)));
        assert_eq!(row1.rho_bound, Some(rat(339, 25)));

        // rho bound >= (C_max - eps) * 3^n on every row up to n = 6
        let eps = rat(1, 1_000_000);
        let c_minus = &table.c_max - eps;
        for row in &table.rows {
            let pn = rat_int(3).pow(row.profile.n as i32);
            assert!(
                row.rho_bound.clone().unwrap() >= &c_minus * &pn,
                "row n = {}",
                row.profile.n
            );
        }

        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(5),
            "runtime {elapsed:?} exceeds 5 s"
        );
    });
}

#[test]
fn criterion_7_size_bound() {
    criterion("7 (size bound value and asymptotic scale)", || {
        // Exact rational: 625 - 339 - 12_500_000/919_368 - 1.
        let m = gspoly::m_lower_bound(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap();
        let expect = rat_int(625) - rat_int(339) - rat(12_500_000, 919_368) - rat_int(1);
        assert_eq!(m, expect);
        assert_eq!(m, rat(31_189_985, 114_921));
        // decimal sanity: about 271.40
        assert!(m > rat(27_139, 100) && m < rat(27_141, 100));

        // m_bound / 9^n approaches A/4 - B = 81/4 within 5% by n = 6.
        let (spec, dmodel, cmodel) = tower::cyclotomic_setup(3, 13, 1, 0).unwrap();
        let table = tower::growth_table(&spec, &dmodel, &cmodel, 0, 6, 1).unwrap();
        assert_eq!(table.a_quarter_minus_b, rat(81, 4));
        let row6 = table.rows.iter().find(|r| r.profile.n == 6).unwrap();
        let scale = rat_int(9).pow(6);
        let ratio = &row6.m_bound / &scale / &table.a_quarter_minus_b;
        assert!(
            (&ratio - rat_int(1)).abs() <= rat(5, 100),
            "m_bound/9^6 is {} of the limit",
            ratio
        );
    });
}

#[test]
fn criterion_8_closed_form_equivalence() {
    criterion("8 (vertex-sign equivalence on 1000 random tuples)", || {
        let mut rng = StdRng::seed_from_u64(0x6571_7569);
        let mut checked = 0u32;
        while checked < 1000 {
            let d = rat(rng.gen_range(1i64..=600), rng.gen_range(1i64..=12));
            let r = rat(rng.gen_range(1i64..=600), rng.gen_range(1i64..=12));
            let rp = rat(rng.gen_range(0i64..=600), rng.gen_range(1i64..=12));
            let p = [3u32, 5, 7][rng.gen_range(0..3)];
            let tn = gspoly::vertex_t(&d, &r).unwrap();
            if !(tn.is_positive() && tn < Rational::one()) {
                continue;
            }
            let certified = gspoly::certified_negativity(&d, &r, &rp, p).unwrap();
            let q_value = gspoly::q_at_vertex(&d, &r, &rp, p).unwrap();
            assert_eq!(
                certified,
                q_value.is_negative(),
                "disagreement at D={d}, R={r}, R'={rp}, p={p}"
            );
            checked += 1;
        }
    });
}

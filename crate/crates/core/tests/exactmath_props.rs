use lvmb_core::exactmath::{
    hnf_basis_extension, int, lp_solve, rational_rank, snf, IntMatrix, LpOutcome, LpProblem, Relation, Sense,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=5usize, 1..=5usize)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn lp() -> impl Strategy<Value = LpProblem> {
    (1..=4usize, 1..=5usize)
        .prop_flat_map(|(vars, rows)| {
            (
                prop::collection::vec(-3i64..=3, vars),
                prop::collection::vec((prop::collection::vec(-3i64..=3, vars), 0..3u8, -4i64..=4), rows),
                prop::collection::vec(any::<bool>(), vars),
                any::<bool>(),
            )
        })
        .prop_map(|(obj, rows, free, max)| {
            let sense = if max { Sense::Maximize } else { Sense::Minimize };
            let mut p = LpProblem::new(sense, obj.into_iter().map(int).collect());
            for (coeffs, rel, rhs) in rows {
                let relation = [Relation::Le, Relation::Eq, Relation::Ge][rel as usize];
                p.constrain(coeffs.into_iter().map(int).collect(), relation, int(rhs));
            }
            for (i, f) in free.into_iter().enumerate() {
                if f {
                    p.set_free(i);
                }
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_factorization(rows in small_matrix()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.rank, a.rank());
        let rat_rows: Vec<_> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        prop_assert_eq!(s.rank, rational_rank(&rat_rows));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| x.is_positive()));
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn hnf_extension_is_unimodular(rows in small_matrix()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        match hnf_basis_extension(&a) {
            Ok(b) => {
                prop_assert_eq!(a.rank(), a.cols());
                prop_assert!(b.determinant().unwrap().abs().is_one());
                let r = a.cols();
                let mut joint = b.column_block(0, r).to_rows();
                for (row, extra) in joint.iter_mut().zip(a.to_rows()) {
                    row.extend(extra);
                }
                prop_assert_eq!(IntMatrix::from_big_rows(joint).unwrap().rank(), r);
            }
            Err(_) => prop_assert!(a.rank() < a.cols()),
        }
    }

    #[test]
    fn lp_outcomes_carry_certificates(p in lp()) {
        match lp_solve(&p).unwrap() {
            LpOutcome::Optimal { value, point } => {
                prop_assert!(p.is_feasible_point(&point));
                prop_assert_eq!(p.objective_value(&point), value);
            }
            LpOutcome::Infeasible(cert) => prop_assert!(p.verify_farkas(&cert)),
            LpOutcome::Unbounded(ray) => prop_assert!(p.verify_ray(&ray)),
        }
    }
}

#[test]
fn determinant_of_identity_block() {
    assert_eq!(IntMatrix::identity(4).determinant().unwrap(), BigInt::one());
}

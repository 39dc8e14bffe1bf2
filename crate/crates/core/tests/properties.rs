use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use qmds_core::constructions::{build, ConstructionParams, Theorem};
use qmds_core::gf::{FieldContext, Gf};
use qmds_core::grs::GrsCode;
use qmds_core::linalg::{Matrix, Solution};

fn fields() -> &'static [Arc<FieldContext>] {
    static FIELDS: OnceLock<Vec<Arc<FieldContext>>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(2, 1), (3, 1), (5, 1), (2, 2), (7, 1), (3, 2)]
            .iter()
            .map(|&(p, e)| Arc::new(FieldContext::new(p, e).unwrap()))
            .collect()
    })
}

fn elem(ctx: &FieldContext, raw: u32) -> Gf {
    let order = ctx.order() as u32;
    ctx.from_index(raw % order)
}

fn unit(ctx: &FieldContext, raw: u32) -> Gf {
    ctx.exp(i64::from(raw % ctx.units()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(f in 0usize..6, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let ctx = &fields()[f];
        let (x, y, z) = (elem(ctx, x), elem(ctx, y), elem(ctx, z));
        prop_assert_eq!(ctx.add(x, y), ctx.add(y, x));
        prop_assert_eq!(ctx.mul(x, y), ctx.mul(y, x));
        prop_assert_eq!(ctx.add(ctx.add(x, y), z), ctx.add(x, ctx.add(y, z)));
        prop_assert_eq!(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)));
        prop_assert_eq!(ctx.mul(x, ctx.add(y, z)), ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
        prop_assert_eq!(ctx.add(x, ctx.neg(x)), Gf::ZERO);
        prop_assert_eq!(ctx.sub(ctx.add(x, y), y), x);
        if !x.is_zero() {
            prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), Gf::ONE);
        }
    }

    #[test]
    fn frobenius_is_additive_and_norm_multiplicative(f in 0usize..6, x in any::<u32>(), y in any::<u32>()) {
        let ctx = &fields()[f];
        let (x, y) = (elem(ctx, x), elem(ctx, y));
        prop_assert_eq!(ctx.frobenius(ctx.add(x, y)), ctx.add(ctx.frobenius(x), ctx.frobenius(y)));
        prop_assert_eq!(ctx.norm(ctx.mul(x, y)), ctx.mul(ctx.norm(x), ctx.norm(y)));
        prop_assert!(ctx.in_base_field(ctx.norm(x)));
        prop_assert_eq!(ctx.frobenius(ctx.frobenius(x)), x);
    }

    #[test]
    fn solve_norm_inverts_norm(f in 0usize..6, x in any::<u32>()) {
        let ctx = &fields()[f];
        let w = ctx.norm(unit(ctx, x));
        let v = ctx.solve_norm(w).unwrap();
        prop_assert_eq!(ctx.norm(v), w);
    }

    #[test]
    fn solve_agrees_with_cramer(f in 0usize..6, n in 1usize..5, raw in prop::collection::vec(any::<u32>(), 30)) {
        let ctx = &fields()[f];
        let a = Matrix::from_fn(ctx.clone(), n, n, |r, c| elem(ctx, raw[r * n + c]));
        let b: Vec<Gf> = (0..n).map(|r| elem(ctx, raw[25 + r])).collect();
        let det = a.determinant().unwrap();
        let sol = a.solve(&b).unwrap();
        if det.is_zero() {
            prop_assert!(a.rank() < n);
            prop_assert!(!matches!(sol, Solution::Unique(_)));
        } else {
            let Solution::Unique(x) = sol else { panic!("nonsingular system not unique") };
            for (i, &xi) in x.iter().enumerate() {
                let ai = Matrix::from_fn(ctx.clone(), n, n, |r, c| if c == i { b[r] } else { a.get(r, c) });
                prop_assert_eq!(xi, ctx.div(ai.determinant().unwrap(), det).unwrap());
            }
            prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
        }
    }

    #[test]
    fn criterion_matches_gram_on_random_codes(
        f in 2usize..6,
        picks in prop::collection::btree_set(0u32..49, 2..8),
        mults in prop::collection::vec(any::<u32>(), 8),
        d in 1usize..4,
    ) {
        let ctx = &fields()[f];
        let order = ctx.order() as u32;
        let pts: Vec<Gf> = picks.into_iter().filter(|&k| k < order).map(|k| ctx.from_index(k)).collect();
        prop_assume!(pts.len() >= 2 && d <= pts.len());
        let v: Vec<Gf> = (0..pts.len()).map(|k| unit(ctx, mults[k])).collect();
        let code = GrsCode::new(ctx.clone(), pts, v, d).unwrap();
        prop_assert_eq!(code.is_hermitian_self_orthogonal(), code.gram_check());
    }

    #[test]
    fn criterion_matches_gram_on_perturbed_constructions(k in 0usize..24, bump in 1u32..24, d in 1usize..3) {
        let q25 = Arc::new(FieldContext::new(5, 1).unwrap());
        let params = ConstructionParams::new(q25.clone(), Theorem::T6, 6, 4, 3, 2).unwrap();
        let c = build(&params, Some(d)).unwrap();
        let mut v = c.code().multipliers().to_vec();
        v[k] = q25.mul(v[k], q25.exp(i64::from(bump)));
        let code = GrsCode::new(q25.clone(), c.code().points().to_vec(), v, d).unwrap();
        prop_assert_eq!(code.is_hermitian_self_orthogonal(), code.gram_check());
        // the norm changes unless bump is a multiple of q - 1 = 4
        if bump % 4 != 0 {
            prop_assert!(!code.is_hermitian_self_orthogonal());
        }
    }
}

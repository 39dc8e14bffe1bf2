use std::sync::Arc;

use qmds_core::constructions::{build, coset_sets, CodeFile, ConstructionParams, Theorem};
use qmds_core::enumerate::enumerate_params;
use qmds_core::gf::{FieldContext, Gf};
use qmds_core::grs::{GrsCode, DEFAULT_BUDGET};
use qmds_core::verify::{rank_deficient_column_subset, verify_code, Levels};

fn params(p: u32, e: u32, theorem: Theorem, s: u64, t: u64, h: u64, r: u64) -> ConstructionParams {
    let ctx = Arc::new(FieldContext::new(p, e).unwrap());
    ConstructionParams::new(ctx, theorem, s, t, h, r).unwrap()
}

#[test]
fn coset_example_matches_dlog_scan() {
    let p = params(5, 1, Theorem::T4, 3, 4, 1, 1);
    let split = coset_sets(&p).unwrap();
    let mut a: Vec<u32> = split.a_only.iter().chain(&split.both).copied().collect();
    a.sort_unstable();
    assert_eq!(a, (0..8).map(|i| 3 * i).collect::<Vec<_>>());
    let mut b: Vec<u32> = split.b_only.iter().chain(&split.both).copied().collect();
    b.sort_unstable();
    assert_eq!(b, (0..6).map(|j| 4 * j).collect::<Vec<_>>());
    assert_eq!(split.both, vec![0, 12]);
}

#[test]
fn small_t4_pipeline() {
    let p = params(5, 1, Theorem::T4, 3, 4, 1, 1);
    let c = build(&p, Some(3)).unwrap();
    let code = c.code();
    let ctx = p.ctx();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(code.power_sum(i, j), Gf::ZERO);
        }
    }
    // d = 3 is the largest grid that vanishes for this code
    assert!(!code.with_dimension(4).unwrap().is_hermitian_self_orthogonal());
    assert_eq!(code.brute_min_distance(DEFAULT_BUDGET).unwrap(), 11);
    assert_eq!(c.witness().lambda, Some(ctx.exp(6)));
    assert_eq!(rank_deficient_column_subset(code), None);
}

#[test]
fn every_q5_code_at_every_dimension() {
    let ctx = Arc::new(FieldContext::new(5, 1).unwrap());
    for rec in enumerate_params(5) {
        let p = ConstructionParams::from_tuple(ctx.clone(), rec.tuple()).unwrap();
        for d in 1..=rec.d_max as usize {
            let c = build(&p, Some(d)).unwrap();
            let levels = Levels {
                criterion: true,
                gram: true,
                component_ranges: true,
                brute_distance: true,
                budget: DEFAULT_BUDGET,
            };
            let report = verify_code(c.code(), Some(&c.provenance()), &levels).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(c.code().len() as u64, rec.n);
        }
    }
}

#[test]
fn t5_and_t6_examples() {
    let c = build(&params(37, 1, Theorem::T5, 19, 4, 1, 1), None).unwrap();
    assert_eq!(c.quantum_params().to_string(), "[[396,360,19]]_37");
    assert!(c.code().gram_check());

    let c = build(&params(37, 1, Theorem::T6, 38, 6, 10, 1), Some(22)).unwrap();
    assert_eq!(c.quantum_params().to_string(), "[[588,544,23]]_37");
    assert!(c.code().is_hermitian_self_orthogonal());
    assert!(c.code().gram_check());

    let c = build(&params(37, 1, Theorem::T6, 38, 4, 17, 1), Some(25)).unwrap();
    assert_eq!(c.quantum_params().to_string(), "[[954,904,26]]_37");
    assert!(c.code().is_hermitian_self_orthogonal());
}

#[test]
fn extension_field_construction() {
    // q = 9: s | 10, t | 8
    let ctx = Arc::new(FieldContext::new(3, 2).unwrap());
    let recs = enumerate_params(9);
    assert!(!recs.is_empty());
    for rec in recs {
        let p = ConstructionParams::from_tuple(ctx.clone(), rec.tuple()).unwrap();
        let c = build(&p, None).unwrap();
        assert!(c.code().is_hermitian_self_orthogonal(), "{rec:?}");
        assert!(c.code().gram_check(), "{rec:?}");
    }
}

#[test]
fn code_files_round_trip_through_json() {
    let c = build(&params(5, 1, Theorem::T6, 6, 4, 3, 2), None).unwrap();
    let json = serde_json::to_string(&c.to_file()).unwrap();
    let file: CodeFile = serde_json::from_str(&json).unwrap();
    let code = GrsCode::from_record(&file.code).unwrap();
    assert_eq!(code.points(), c.code().points());
    assert_eq!(code.multipliers(), c.code().multipliers());
    assert_eq!(file.provenance.unwrap(), c.provenance());
}

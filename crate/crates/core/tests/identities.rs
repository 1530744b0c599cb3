//! Cross-module identity sweeps that exceed the scope of the per-module unit
//! tests: the two twist constructions agree symbolically at every truncation
//! order up to 6, and the three-exponential construction is itself a
//! counital 2-cocycle.

use jtwist_core::{hopfcheck, twists, GeneratorContext, LegMap, UMode};

#[test]
fn twist_constructions_agree_symbolically_up_to_order_six() {
    let ctx = GeneratorContext::standard();
    for n in 0..=6 {
        let gz = twists::fgz_inv(&ctx, &UMode::Symbolic, n);
        let r = twists::fru_inv(&ctx, &UMode::Symbolic, n).unwrap();
        assert_eq!(gz, r, "construction mismatch at order {n}");
    }
}

#[test]
fn three_exponential_construction_is_a_counital_cocycle() {
    let ctx = GeneratorContext::standard();
    let f = twists::fru_inv(&ctx, &UMode::Symbolic, 3).unwrap();
    assert!(hopfcheck::cocycle_residual(&f).unwrap().is_zero());
    for leg in [0, 1] {
        assert!(f.apply_leg(leg, LegMap::Counit).unwrap().is_identity());
    }
}

//! Shared fixtures for the pipeline benchmarks.

use crystal_core::groups::lie::{build_restricted_enveloping, RestrictedLieInput};
use crystal_core::groups::{build_function_algebra, build_group_algebra, FiniteGroup};
use crystal_core::{FieldSpec, HopfAlgebraData};

pub fn group_algebras() -> Vec<(&'static str, HopfAlgebraData)> {
    let f2 = FieldSpec::gf(2);
    vec![
        ("k[Z2xZ4]/GF2", build_group_algebra(&FiniteGroup::zp_powers(2, &[1, 2]).unwrap(), f2)),
        ("k[Z2|xZ4]/GF2", build_group_algebra(&FiniteGroup::zp_semidirect_zp2(2), f2)),
        ("k[Q8]/GF2", build_group_algebra(&FiniteGroup::quaternion(), f2)),
        ("k[S3]/Q", build_group_algebra(&FiniteGroup::symmetric(3).unwrap(), FieldSpec::rationals())),
    ]
}

pub fn function_algebras() -> Vec<(&'static str, HopfAlgebraData)> {
    vec![
        ("A(D4)/GF2", build_function_algebra(&FiniteGroup::dihedral(4), FieldSpec::gf(2))),
        ("A(Q8)/Q", build_function_algebra(&FiniteGroup::quaternion(), FieldSpec::rationals())),
    ]
}

pub fn enveloping() -> HopfAlgebraData {
    build_restricted_enveloping(&RestrictedLieInput::heisenberg(3)).unwrap().algebra
}

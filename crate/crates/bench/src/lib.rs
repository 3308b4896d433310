//! Fixtures shared by the benchmarks.

use gorbit_core::{build_chain, HomogeneousSpace, SpaceId, TolerancePolicy};

pub fn space(id: &str) -> HomogeneousSpace {
    let tol = TolerancePolicy::default();
    let sid: SpaceId = id.parse().expect("valid space id");
    build_chain(sid, &tol)
        .expect("chain builds")
        .space(&tol)
        .expect("space builds")
}

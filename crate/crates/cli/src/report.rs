use std::io::Write;
use std::path::Path;

use anyhow::Context;
use gorbit_core::{HomogeneousSpace, SpaceId, TolerancePolicy};
use serde::Serialize;

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum SeedField {
    None,
    One(u64),
    Many(Vec<u64>),
}

impl SeedField {
    fn is_none(&self) -> bool {
        matches!(self, SeedField::None)
    }
}

#[derive(Serialize)]
pub struct SpaceDoc {
    pub id: String,
    pub name: String,
    pub dim_g: usize,
    pub dim_h: usize,
    pub dim_m: usize,
}

impl SpaceDoc {
    pub fn new(id: &SpaceId, space: &HomogeneousSpace) -> Self {
        Self {
            id: id.to_string(),
            name: space.name().to_string(),
            dim_g: space.dim_g(),
            dim_h: space.dim_h(),
            dim_m: space.dim_m(),
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: Tool,
    #[serde(skip_serializing_if = "SeedField::is_none")]
    pub seed: SeedField,
    pub tolerance: TolerancePolicy,
    #[serde(flatten)]
    pub body: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
}

impl Report {
    pub fn new(
        schema: &'static str,
        seed: SeedField,
        tolerance: TolerancePolicy,
        body: serde_json::Value,
        wall_clock_seconds: Option<f64>,
    ) -> Self {
        Self {
            schema,
            tool: Tool {
                name: "gorbit",
                version: env!("CARGO_PKG_VERSION"),
            },
            seed,
            tolerance,
            body,
            wall_clock_seconds,
        }
    }
}

pub fn emit(report: &Report, out: Option<&Path>) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

//! Browser bindings: run a verification suite, evaluate an embedding and
//! classify it. Each export returns a JSON string for the page to render.

use std::sync::Arc;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use jtriple::embedding::io::{vector_from_json, vector_to_json};
use jtriple::embedding::{EmbeddingSpec, FtSpec, LieSpec, MokSpec};
use jtriple::verify::{check_embedding_isometry, check_presentation_relations, classify_embedding, run_identity_suite, Identity, SampleConfig};
use jtriple::{TripleSystem, C64};

const MAX_SAMPLES: usize = 2000;

fn embedding(system: &str, family: &str, t: f64) -> Result<EmbeddingSpec, String> {
    let sys = Arc::new(TripleSystem::parse(system).map_err(|e| e.to_string())?);
    let spec = match family {
        "mok" => MokSpec::canonical(sys).map(EmbeddingSpec::Mok),
        "lie" => LieSpec::canonical(sys, C64::new(1.0, 0.0)).map(EmbeddingSpec::LieIrrational),
        "ft" => FtSpec::new(sys, t).map(EmbeddingSpec::FtFamily),
        other => return Err(format!("unknown embedding family {other:?}")),
    };
    spec.map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SystemRow {
    name: String,
    dim: usize,
    rank: usize,
    a: usize,
    b: usize,
    genus: usize,
    source_dim: usize,
}

pub fn systems_json() -> String {
    let rows: Vec<SystemRow> = ["rect:2,3", "sym:3", "asym:5", "spin:4", "bicayley", "albert"]
        .iter()
        .map(|s| {
            let inv = TripleSystem::parse(s).expect("listed systems parse").invariants();
            SystemRow { name: s.to_string(), dim: inv.dim, rank: inv.rank, a: inv.a, b: inv.b, genus: inv.genus, source_dim: inv.genus - 1 }
        })
        .collect();
    serde_json::to_string(&rows).expect("rows serialize")
}

pub fn verify_json(system: &str, suite: &str, samples: usize, seed: u64) -> Result<String, String> {
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("samples must lie in 1..={MAX_SAMPLES}"));
    }
    let cfg = SampleConfig::new(seed, samples, 0.5, 1e-9).map_err(|e| e.to_string())?;
    let report = match suite {
        "presentation-relations" => {
            let sys = TripleSystem::parse(system).map_err(|e| e.to_string())?;
            check_presentation_relations(&sys, &cfg)
        }
        "kernel-isometry" => check_embedding_isometry(&embedding(system, "mok", 0.5)?, &cfg),
        name => {
            let id: Identity = name.parse().map_err(|e: jtriple::Error| e.to_string())?;
            let sys = TripleSystem::parse(system).map_err(|e| e.to_string())?;
            run_identity_suite(&sys, id, &cfg)
        }
    };
    report.map(|r| r.to_json()).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Embedded {
    image: Vec<[f64; 2]>,
    kernel_residual: f64,
}

/// `point` is a JSON list of `[re, im]` pairs.
pub fn embed_json(system: &str, family: &str, t: f64, point: &str) -> Result<String, String> {
    let spec = embedding(system, family, t)?;
    let raw: Vec<[f64; 2]> = serde_json::from_str(point).map_err(|e| format!("bad point: {e}"))?;
    let z = vector_from_json(&raw);
    let fz = spec.evaluate(&z).map_err(|e| e.to_string())?;
    let kernel_residual = (spec.system().quasi_det(&fz, &fz) - (1.0 - z.norm_squared())).norm();
    Ok(serde_json::to_string(&Embedded { image: vector_to_json(&fz), kernel_residual }).expect("serializes"))
}

pub fn classify_text(system: &str, family: &str, t: f64) -> Result<String, String> {
    let spec = embedding(system, family, t)?;
    classify_embedding(&spec).map(|c| c.to_string()).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = listSystems)]
pub fn list_systems() -> String {
    systems_json()
}

#[wasm_bindgen(js_name = runSuite)]
pub fn run_suite(system: &str, suite: &str, samples: u32, seed: u32) -> Result<String, JsValue> {
    verify_json(system, suite, samples as usize, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = embedPoint)]
pub fn embed_point(system: &str, family: &str, t: f64, point: &str) -> Result<String, JsValue> {
    embed_json(system, family, t, point).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(system: &str, family: &str, t: f64) -> Result<String, JsValue> {
    classify_text(system, family, t).map_err(|e| JsValue::from_str(&e))
}

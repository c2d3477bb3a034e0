//! End-to-end pipeline: outer graph → spectrum → gadget search →
//! composition → sampled verification → diagnostics, with artifacts and a
//! reproducibility manifest written under an output directory.
//!
//! The manifest is byte-stable across reruns with identical flags, seeds and
//! inputs; wall-clock timings go to a separate `timings.json` so they never
//! perturb it.

use crate::compose::{check_balance, compose, BalanceReport, Composition};
use crate::diagnostics::{expansion_accounting, AccountingLedger};
use crate::error::{Error, Result};
use crate::gadget::{search_gadget, GadgetCertificate, GadgetSpec};
use crate::graph::{io, Side, VertexSet};
use crate::plan::{PlanParams, SamplerMethod};
use crate::seed::derive_named;
use crate::spectral::{lambda2_walk, nonlazy_square, SpectralReport};
use crate::verify::{verify_sampled, ExpansionReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Where the outer graph comes from.
#[derive(Debug, Clone)]
pub enum OuterSource {
    Random { n_left: usize, seed: u64 },
    File(PathBuf),
}

impl OuterSource {
    /// Parses `random:<n_left>:<seed>` or `file:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("random:") {
            let mut it = rest.split(':');
            let n_left = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidSpec(format!("bad outer source {s:?}")))?;
            let seed = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidSpec(format!("bad outer source {s:?}")))?;
            if it.next().is_some() {
                return Err(Error::InvalidSpec(format!("bad outer source {s:?}")));
            }
            Ok(OuterSource::Random { n_left, seed })
        } else if let Some(path) = s.strip_prefix("file:") {
            Ok(OuterSource::File(PathBuf::from(path)))
        } else {
            Err(Error::InvalidSpec(format!(
                "outer source must be random:<n_left>:<seed> or file:<path>, got {s:?}"
            )))
        }
    }

    pub fn describe(&self) -> String {
        match self {
            OuterSource::Random { n_left, seed } => format!("random:{n_left}:{seed}"),
            OuterSource::File(p) => format!("file:{}", p.display()),
        }
    }
}

/// Pipeline configuration.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub params: PlanParams,
    pub outer: OuterSource,
    /// Master seed; stage seeds are derived from it by name.
    pub seed: u64,
    pub trials: usize,
    pub gadget_max_attempts: usize,
    pub outer_method: SamplerMethod,
    /// When set, artifacts, the consolidated report, the manifest and the
    /// timings are written here.
    pub out_dir: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(params: PlanParams, outer: OuterSource, seed: u64) -> Self {
        PipelineConfig {
            params,
            outer,
            seed,
            trials: 10_000,
            gadget_max_attempts: 50,
            // rejection cannot reach simplicity at desk-scale degrees
            outer_method: SamplerMethod::SwapRepair,
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OuterStage {
    pub source: String,
    pub left_count: usize,
    pub right_count: usize,
    pub k: usize,
    pub d_right: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralStage {
    pub report: SpectralReport,
    /// `1/D₀ + 2/√(D₀(k−1))`, the scale a near-optimal outer would attain.
    pub lambda2_scale_reference: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MuStage {
    pub lambda2: f64,
    pub value: f64,
    pub clamped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetStage {
    pub spec: GadgetSpec,
    pub attempts: usize,
    pub certificate: GadgetCertificate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompositionStage {
    pub k: usize,
    pub d0: usize,
    pub outer_degree: usize,
    pub left_count: usize,
    pub right_count: usize,
    pub edge_count: usize,
    pub left_degree_uniform: bool,
    pub balance: BalanceReport,
    pub sha256: String,
}

/// Consolidated pipeline output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineReport {
    pub params: PlanParams,
    pub outer: OuterStage,
    pub spectral: SpectralStage,
    pub mu: MuStage,
    pub gadget: GadgetStage,
    pub composition: CompositionStage,
    pub verification: ExpansionReport,
    pub diagnostics: AccountingLedger,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArtifactHash {
    pub path: String,
    pub sha256: String,
}

/// Reproducibility record: rerunning with the same flags, seeds and inputs
/// reproduces every artifact hash byte-for-byte.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub args: BTreeMap<String, String>,
    pub seeds: BTreeMap<String, u64>,
    pub inputs: Vec<ArtifactHash>,
    pub artifacts: Vec<ArtifactHash>,
    /// Wall-clock data lives in this sibling file, excluded from the
    /// byte-identity contract.
    pub timings_file: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        use std::fmt::Write;
        let _ = write!(s, "{b:02x}");
    }
    s
}

struct ArtifactWriter {
    dir: Option<PathBuf>,
    hashes: Vec<ArtifactHash>,
}

impl ArtifactWriter {
    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        self.hashes.push(ArtifactHash {
            path: name.to_string(),
            sha256: sha256_hex(contents.as_bytes()),
        });
        if let Some(dir) = &self.dir {
            std::fs::write(dir.join(name), contents)?;
        }
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value).expect("serializable report");
        text.push('\n');
        self.write(name, &text)
    }
}

/// Runs every stage, returning the consolidated report and the manifest.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<(PipelineReport, RunManifest)> {
    cfg.params.validate().map_err(|e| e.in_stage("params"))?;
    let mut params = cfg.params.clone();
    let mut timings: Vec<(String, f64)> = Vec::new();
    let mut writer = ArtifactWriter {
        dir: cfg.out_dir.clone(),
        hashes: Vec::new(),
    };
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let mut inputs = Vec::new();
    let mut clock = Instant::now();
    let lap = |timings: &mut Vec<(String, f64)>, name: &str, clock: &mut Instant| {
        timings.push((name.to_string(), clock.elapsed().as_secs_f64()));
        *clock = Instant::now();
    };

    // outer graph
    let outer = match &cfg.outer {
        OuterSource::Random { n_left, seed } => crate::plan::generate_random_biregular(
            *n_left,
            params.k,
            params.outer_degree,
            *seed,
            cfg.outer_method,
        )
        .map_err(|e| e.in_stage("outer"))?,
        OuterSource::File(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::from(e).in_stage("outer"))?;
            inputs.push(ArtifactHash {
                path: path.display().to_string(),
                sha256: sha256_hex(text.as_bytes()),
            });
            io::parse_bipartite(&text).map_err(|e| e.in_stage("outer"))?
        }
    };
    outer
        .require_biregular(params.k, params.outer_degree)
        .map_err(|e| e.in_stage("outer"))?;
    let outer_stage = OuterStage {
        source: cfg.outer.describe(),
        left_count: outer.left_count(),
        right_count: outer.right_count(),
        k: params.k,
        d_right: params.outer_degree,
        sha256: outer.content_hash(),
    };
    writer.write("outer.graph", &io::bipartite_to_string(&outer))?;
    lap(&mut timings, "outer", &mut clock);

    // spectrum of the nonlazy square
    let xprime = nonlazy_square(&outer).map_err(|e| e.in_stage("spectral"))?;
    let spectral_report = lambda2_walk(&xprime).map_err(|e| e.in_stage("spectral"))?;
    let d0f = params.outer_degree as f64;
    let spectral_stage = SpectralStage {
        report: spectral_report.clone(),
        lambda2_scale_reference: 1.0 / d0f + 2.0 / (d0f * (params.k as f64 - 1.0)).sqrt(),
    };
    writer.write("xprime.graph", &io::weighted_to_string(&xprime))?;
    writer.write_json("spectral.json", &spectral_stage)?;
    lap(&mut timings, "spectral", &mut clock);

    // mu from the measured lambda2
    let lambda2 = spectral_report.lambda2;
    let clamped = params.set_measured_lambda2(lambda2);
    let mu_stage = MuStage {
        lambda2,
        value: params.mu.expect("just set"),
        clamped,
        warning: (lambda2 >= 1.0 - 1e-12)
            .then(|| format!("lambda2 = {lambda2:.6} indicates a disconnected-like outer graph")),
    };
    lap(&mut timings, "mu", &mut clock);

    // gadget search at n = D0
    let gadget_spec = GadgetSpec {
        n: params.outer_degree,
        beta0: params.beta0,
        d0: params.d0,
        mu0: params.mu0,
        eps0: params.eps0,
    };
    let gadget_seed = derive_named(cfg.seed, "gadget");
    let search = search_gadget(&gadget_spec, cfg.gadget_max_attempts, gadget_seed)
        .map_err(|e| e.in_stage("gadget"))?;
    let gadget_stage = GadgetStage {
        spec: gadget_spec,
        attempts: search.attempts,
        certificate: search.certificate.clone(),
    };
    writer.write("gadget.graph", &io::bipartite_to_string(&search.graph))?;
    writer.write_json("gadget_cert.json", &search.certificate)?;
    lap(&mut timings, "gadget", &mut clock);

    // composition
    let comp: Composition = compose(&outer, &search.graph).map_err(|e| e.in_stage("compose"))?;
    let balance = check_balance(&comp, params.beta1, params.beta2);
    let composition_stage = CompositionStage {
        k: comp.k,
        d0: comp.d0,
        outer_degree: comp.outer_right_degree,
        left_count: comp.result.left_count(),
        right_count: comp.result.right_count(),
        edge_count: comp.result.edge_count(),
        left_degree_uniform: comp.result.left_degree() == Some(comp.d0 * comp.k),
        balance,
        sha256: comp.result.content_hash(),
    };
    writer.write("composed.graph", &io::bipartite_to_string(&comp.result))?;
    lap(&mut timings, "compose", &mut clock);

    // sampled verification at (mu, eps)
    let verify_seed = derive_named(cfg.seed, "verify");
    let mu = params.mu.expect("measured above");
    let verification = verify_sampled(&comp.result, mu, params.eps, cfg.trials, verify_seed)
        .map_err(|e| e.in_stage("verify"))?;
    writer.write_json("verify.json", &verification)?;
    lap(&mut timings, "verify", &mut clock);

    // diagnostics on the worst sampled set
    let worst_set = VertexSet::new(Side::Left, verification.witness.clone());
    let diagnostics = expansion_accounting(
        &comp,
        &worst_set,
        params.mu0,
        params.eps0,
        params.eps,
        Some(&search.certificate),
    )
    .map_err(|e| e.in_stage("diagnose"))?;
    writer.write_json("diagnostics.json", &diagnostics)?;
    lap(&mut timings, "diagnose", &mut clock);

    let report = PipelineReport {
        params: params.clone(),
        outer: outer_stage,
        spectral: spectral_stage,
        mu: mu_stage,
        gadget: gadget_stage,
        composition: composition_stage,
        verification,
        diagnostics,
    };
    writer.write_json("report.json", &report)?;

    let mut args = BTreeMap::new();
    args.insert("outer".to_string(), cfg.outer.describe());
    args.insert("trials".to_string(), cfg.trials.to_string());
    args.insert(
        "max-attempts".to_string(),
        cfg.gadget_max_attempts.to_string(),
    );
    args.insert(
        "outer-method".to_string(),
        match cfg.outer_method {
            SamplerMethod::Rejection => "rejection".to_string(),
            SamplerMethod::SwapRepair => "swap".to_string(),
        },
    );
    args.insert(
        "mode".to_string(),
        format!("{:?}", params.mode).to_lowercase(),
    );
    let mut seeds = BTreeMap::new();
    seeds.insert("master".to_string(), cfg.seed);
    seeds.insert("gadget".to_string(), gadget_seed);
    seeds.insert("verify".to_string(), verify_seed);
    if let OuterSource::Random { seed, .. } = cfg.outer {
        seeds.insert("outer".to_string(), seed);
    }
    let manifest = RunManifest {
        tool: "expander".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        subcommand: "run".to_string(),
        args,
        seeds,
        inputs,
        artifacts: writer.hashes.clone(),
        timings_file: "timings.json".to_string(),
    };
    if let Some(dir) = &cfg.out_dir {
        let mut text = serde_json::to_string_pretty(&manifest).expect("serializable manifest");
        text.push('\n');
        std::fs::write(dir.join("manifest.json"), text)?;
        write_timings(dir, &timings)?;
    }
    Ok((report, manifest))
}

fn write_timings(dir: &Path, timings: &[(String, f64)]) -> Result<()> {
    let map: Vec<serde_json::Value> = timings
        .iter()
        .map(|(name, secs)| serde_json::json!({ "stage": name, "seconds": secs }))
        .collect();
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Array(map)).unwrap();
    text.push('\n');
    std::fs::write(dir.join("timings.json"), text)?;
    Ok(())
}

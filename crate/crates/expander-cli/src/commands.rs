//! One function per subcommand. Each returns the process exit code on the
//! success path; errors map through the taxonomy in the crate root.

use crate::{
    ComposeArgs, DiagnoseArgs, GenOuterArgs, MethodArg, ModeArg, PlanArgs, RunArgs, SamplerArg,
    SearchGadgetArgs, SpectrumArgs, VerifyArgs, EXIT_CERTIFIED_FAIL, EXIT_OK, EXIT_REFUSAL,
};
use expander_core::compose::{check_balance, compose_with_ports, BalanceReport};
use expander_core::diagnostics::expansion_accounting;
use expander_core::gadget::{self, GadgetCertificate, GadgetSpec};
use expander_core::graph::{io, read_graph_file, read_vertex_set, GraphFile, Side, WeightedGraph};
use expander_core::pipeline::{self, OuterSource, PipelineConfig};
use expander_core::plan::{self, PlanMode, PlanParams, SamplerMethod};
use expander_core::spectral::{lambda2_walk, lambda2_walk_with, nonlazy_square, Method};
use expander_core::verify::{verify_exact, verify_sampled, ExpansionReport};
use expander_core::{Error, Result};
use serde::Serialize;

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable report")
    );
}

impl From<ModeArg> for PlanMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => PlanMode::Paper,
            ModeArg::Desk => PlanMode::Desk,
        }
    }
}

impl From<SamplerArg> for SamplerMethod {
    fn from(m: SamplerArg) -> Self {
        match m {
            SamplerArg::Rejection => SamplerMethod::Rejection,
            SamplerArg::Swap => SamplerMethod::SwapRepair,
        }
    }
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dense => Method::Dense,
            MethodArg::Iterative => Method::Iterative,
        }
    }
}

pub fn plan(a: PlanArgs) -> Result<i32> {
    let params = plan::plan(a.beta1, a.beta2, a.eps, a.mode.into())?;
    if let Some(w) = &params.warning {
        eprintln!("warning: {w}");
    }
    if a.json {
        print_json(&params);
    } else {
        println!(
            "mode {:?}: k={} eps0={} beta0={} d0={} mu0={:.6} lambda2_target={:.3e} D0={} (min {})",
            params.mode,
            params.k,
            params.eps0,
            params.beta0,
            params.d0,
            params.mu0,
            params.lambda2_target,
            params.outer_degree,
            params.outer_degree_min,
        );
    }
    Ok(EXIT_OK)
}

pub fn gen_outer(a: GenOuterArgs) -> Result<i32> {
    let g = plan::generate_random_biregular(a.n_left, a.k, a.d_right, a.seed, a.method.into())?;
    io::write_bipartite(&g, &a.out)?;
    println!(
        "wrote {} ({} left, {} right, {} edges, sha256 {})",
        a.out.display(),
        g.left_count(),
        g.right_count(),
        g.edge_count(),
        g.content_hash()
    );
    Ok(EXIT_OK)
}

pub fn search_gadget(a: SearchGadgetArgs) -> Result<i32> {
    let spec = GadgetSpec {
        n: a.n,
        beta0: a.beta0,
        d0: a.d0,
        mu0: a.mu0,
        eps0: a.eps0,
    };
    match gadget::search_gadget(&spec, a.max_attempts, a.seed) {
        Ok(found) => {
            io::write_bipartite(&found.graph, &a.out)?;
            write_cert(&found.certificate, &a.cert)?;
            println!(
                "certified gadget after {} attempt(s): worst ratio {} = {:.6}, graph {}, certificate {}",
                found.attempts,
                found.certificate.worst_ratio,
                found.certificate.worst_ratio_value,
                a.out.display(),
                a.cert.display()
            );
            Ok(EXIT_OK)
        }
        Err(Error::SearchExhausted {
            attempts,
            best_ratio,
            best,
        }) => {
            io::write_bipartite(&best.graph, &a.out)?;
            write_cert(&best.certificate, &a.cert)?;
            eprintln!(
                "search exhausted after {attempts} attempts; best candidate (worst ratio {best_ratio:.6}, not passing) written to {} and {}",
                a.out.display(),
                a.cert.display()
            );
            Ok(EXIT_REFUSAL)
        }
        Err(e) => Err(e),
    }
}

fn write_cert(cert: &GadgetCertificate, path: &std::path::Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(cert).expect("serializable certificate");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[derive(Serialize)]
struct CompositionMeta {
    k: usize,
    d0: usize,
    outer_degree: usize,
    left_count: usize,
    right_count: usize,
    edge_count: usize,
    left_degree_uniform: bool,
    ratio: f64,
    sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    balance: Option<BalanceReport>,
}

pub fn compose(a: ComposeArgs) -> Result<i32> {
    let outer = io::read_bipartite(&a.outer)?;
    let gadget = io::read_bipartite(&a.gadget)?;
    let comp = compose_with_ports(&outer, &gadget, a.port_shuffle_seed)?;
    io::write_bipartite(&comp.result, &a.out)?;
    let balance = match (a.beta1, a.beta2) {
        (Some(b1), Some(b2)) => Some(check_balance(&comp, b1, b2)),
        (None, None) => None,
        _ => {
            return Err(Error::InvalidSpec(
                "--beta1 and --beta2 must be given together".into(),
            ))
        }
    };
    let meta = CompositionMeta {
        k: comp.k,
        d0: comp.d0,
        outer_degree: comp.outer_right_degree,
        left_count: comp.result.left_count(),
        right_count: comp.result.right_count(),
        edge_count: comp.result.edge_count(),
        left_degree_uniform: comp.result.left_degree() == Some(comp.d0 * comp.k),
        ratio: comp.result.right_count() as f64 / comp.result.left_count() as f64,
        sha256: comp.result.content_hash(),
        balance,
    };
    print_json(&meta);
    Ok(EXIT_OK)
}

fn report_exit(report: &ExpansionReport) -> i32 {
    if report.passed {
        EXIT_OK
    } else {
        EXIT_CERTIFIED_FAIL
    }
}

pub fn verify(a: VerifyArgs) -> Result<i32> {
    let g = io::read_bipartite(&a.graph)?;
    let report = if a.sampled {
        let trials = a.trials.expect("clap enforces --trials with --sampled");
        let seed = a.seed.ok_or_else(|| {
            Error::InvalidSpec("--seed is required for sampled verification".into())
        })?;
        verify_sampled(&g, a.mu, a.eps, trials, seed)?
    } else if a.exact {
        verify_exact(&g, a.mu, a.eps)?
    } else {
        return Err(Error::InvalidSpec(
            "choose one of --exact or --sampled".into(),
        ));
    };
    if a.json {
        print_json(&report);
    } else {
        println!(
            "mode {:?}: mu {} (max set size {}), eps {}, examined {}",
            report.mode, report.mu, report.max_set_size, report.eps, report.sets_examined
        );
        println!(
            "worst ratio {} = {:.6}, witness {:?}",
            report.worst_ratio, report.worst_ratio_value, report.witness
        );
        println!(
            "{}{}",
            if report.passed { "PASS" } else { "FAIL" },
            if report.certifying {
                ""
            } else {
                " (sampled evidence only, not a certificate)"
            }
        );
    }
    Ok(report_exit(&report))
}

pub fn spectrum(a: SpectrumArgs) -> Result<i32> {
    let weighted: WeightedGraph = match read_graph_file(&a.graph)? {
        GraphFile::Bipartite(b) => {
            if a.nonlazy_square {
                nonlazy_square(&b)?
            } else {
                WeightedGraph::from_bipartite(&b)
            }
        }
        GraphFile::Weighted(w) => {
            if a.nonlazy_square {
                return Err(Error::InvalidSpec(
                    "--nonlazy-square applies to bipartite inputs only".into(),
                ));
            }
            w
        }
    };
    let report = match a.method {
        Some(m) => lambda2_walk_with(&weighted, m.into())?,
        None => lambda2_walk(&weighted)?,
    };
    if a.json {
        print_json(&report);
    } else {
        println!(
            "lambda2 = {:.9} (|nontrivial|max = {:.9}, method {:?}, residual {:.2e})",
            report.lambda2, report.lambda_max_nontrivial_abs, report.method, report.residual
        );
    }
    Ok(EXIT_OK)
}

pub fn diagnose(a: DiagnoseArgs) -> Result<i32> {
    let outer = io::read_bipartite(&a.outer)?;
    let gadget = io::read_bipartite(&a.gadget)?;
    let comp = compose_with_ports(&outer, &gadget, None)?;
    let set = read_vertex_set(&a.set, Side::Left)?;
    let cert: Option<GadgetCertificate> = match &a.cert {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Some(serde_json::from_str(&text).map_err(|e| {
                Error::InvalidSpec(format!("bad certificate JSON {}: {e}", path.display()))
            })?)
        }
        None => None,
    };
    let eps = a.eps.unwrap_or((10.0 * a.eps0).min(1.0));
    let ledger = expansion_accounting(&comp, &set, a.mu0, a.eps0, eps, cert.as_ref())?;
    print_json(&ledger);
    Ok(EXIT_OK)
}

pub fn run_pipeline(a: RunArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&a.params)?;
    let params: PlanParams = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidSpec(format!("bad params JSON {}: {e}", a.params.display())))?;
    let outer = OuterSource::parse(&a.outer)?;
    let mut cfg = PipelineConfig::new(params, outer, a.seed);
    cfg.trials = a.trials;
    cfg.gadget_max_attempts = a.max_attempts;
    cfg.outer_method = a.outer_method.into();
    cfg.out_dir = Some(a.out_dir.clone());
    let (report, _manifest) = pipeline::run_pipeline(&cfg)?;
    if let Some(w) = &report.mu.warning {
        eprintln!("warning: {w}");
    }
    if a.json {
        print_json(&report);
    } else {
        println!(
            "outer: {} ({}x{}), lambda2 = {:.4} (reference scale {:.4})",
            report.outer.source,
            report.outer.left_count,
            report.outer.right_count,
            report.spectral.report.lambda2,
            report.spectral.lambda2_scale_reference
        );
        println!(
            "mu = {:.4}{}, gadget certified in {} attempt(s), composed {}x{} (ratio {:.4})",
            report.mu.value,
            if report.mu.clamped { " (clamped)" } else { "" },
            report.gadget.attempts,
            report.composition.left_count,
            report.composition.right_count,
            report.composition.balance.ratio
        );
        println!(
            "sampled verification: worst ratio {:.4} over {} trials -> {}",
            report.verification.worst_ratio_value,
            report.verification.sets_examined,
            if report.verification.passed {
                "PASS"
            } else {
                "FAIL"
            }
        );
        println!("artifacts and manifest written to {}", a.out_dir.display());
    }
    Ok(report_exit(&report.verification))
}

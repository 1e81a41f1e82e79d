use std::fmt::Write as _;
use std::io::Write as _;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use zc_core::detect::{
    self, max_concurrence_search_with, mixed_concurrence_full, ppt_test, psd_test_registry,
    wootters_concurrence, SearchConfig, VerdictTag,
};
use zc_core::io::{self, CanonicalRecord, StateFile};
use zc_core::matops::partial_transpose_a;
use zc_core::rng;
use zc_core::states::families::{family_registry, FamilyParams, Generated};
use zc_core::states::{canonicalize, make_zce, random_local_unitaries, Canonicalized};
use zc_core::symmetries::{conjugation_from_params, CartanParams};
use zc_core::tol;

use crate::{Common, ConcurrenceArgs, Format, GenArgs, InputArgs, PptArgs, SweepArgs};

const OK: u8 = 0;
const ENTANGLED: u8 = 10;
const ZCE_UNDETECTED: u8 = 11;
const BAD_INPUT: u8 = 2;
const WRONG_RANK: u8 = 3;

pub fn exit_code(tag: VerdictTag) -> u8 {
    match tag {
        VerdictTag::SeparableCertified => OK,
        VerdictTag::EntangledByPPT | VerdictTag::EntangledByConcurrence => ENTANGLED,
        VerdictTag::ZCEUndetectedByConcurrence => ZCE_UNDETECTED,
        VerdictTag::Inconclusive => OK,
    }
}

pub fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<zc_core::Error>() {
        Some(zc_core::Error::WrongRank { .. }) => WRONG_RANK,
        _ => BAD_INPUT,
    }
}

fn search_config(c: &Common) -> SearchConfig {
    SearchConfig {
        restarts: c.restarts,
        seed: c.seed,
        optimizer: c.optimizer.clone(),
        max_evals: c.max_evals,
    }
}

fn emit(c: &Common, text: &str) -> Result<()> {
    match &c.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn load(path: &std::path::Path) -> Result<Generated> {
    Ok(io::read_state(path)?)
}

pub fn detect(a: &InputArgs) -> Result<u8> {
    let state = load(&a.input)?;
    let verdict = detect::detect(&state.density, &search_config(&a.common))?;
    let text = match a.common.format {
        Format::Json => io::to_json(&verdict.report())?,
        Format::Text => {
            let mut t = String::new();
            writeln!(t, "tag: {:?}", verdict.tag)?;
            writeln!(t, "ppt_min_eig: {:e}", verdict.ppt_min_eig)?;
            if let Some(c) = verdict.concurrence {
                writeln!(t, "concurrence: {c:e}")?;
            }
            if let Some(class) = verdict.class {
                writeln!(t, "class: {class:?}")?;
            }
            for note in &verdict.notes {
                writeln!(t, "note: {note}")?;
            }
            t
        }
    };
    emit(&a.common, &text)?;
    Ok(exit_code(verdict.tag))
}

pub fn gen(a: &GenArgs) -> Result<u8> {
    let registry = family_registry();
    let family = registry.get(&a.family)?;
    let tilde = match &a.tilde {
        Some(path) => Some(load(path)?.density),
        None => None,
    };
    let params = FamilyParams {
        seed: a.common.seed,
        terms: a.terms,
        n_b: a.n_b,
        q1: a.q1,
        phi: a.phi,
        rotate: a.rotate,
        tilde,
    };
    let generated = family.generate(&params)?;
    emit(&a.common, &io::to_json(&StateFile::from_generated(&generated))?)?;
    Ok(OK)
}

#[derive(Serialize)]
struct ProductEigenvectors {
    product_eigenvectors: bool,
}

pub fn canonical(a: &InputArgs) -> Result<u8> {
    let state = load(&a.input)?;
    let s = match state.rank_two {
        Some(s) => s,
        None => state.density.to_rank_two()?,
    };
    if s.dims() != (2, 4) {
        bail!(zc_core::Error::UnsupportedShape {
            n_a: s.dims().0,
            n_b: s.dims().1
        });
    }
    let text = match canonicalize(&s)? {
        Canonicalized::Canonical(cf) => io::to_json(&CanonicalRecord::new(&cf, &s))?,
        Canonicalized::BothSeparable => io::to_json(&ProductEigenvectors {
            product_eigenvectors: true,
        })?,
    };
    emit(&a.common, &text)?;
    Ok(OK)
}

#[derive(Serialize)]
struct ConcurrenceReport {
    concurrence: f64,
    method: &'static str,
    params: Option<CartanParams>,
}

pub fn concurrence(a: &ConcurrenceArgs) -> Result<u8> {
    let state = load(&a.input)?;
    let rho = &state.density;
    let report = match (&a.params, rho.n_b()) {
        (Some(path), 4) => {
            let p = io::read_params(path)?;
            let (value, _) = mixed_concurrence_full(rho, &conjugation_from_params(&p))?;
            ConcurrenceReport {
                concurrence: value,
                method: "given",
                params: Some(p),
            }
        }
        (Some(_), n_b) => bail!("conjugation parameters need a 2x4 state, found 2x{n_b}"),
        (None, 2) => ConcurrenceReport {
            concurrence: wootters_concurrence(rho)?,
            method: "spin-flip",
            params: None,
        },
        (None, _) => {
            let s = match &state.rank_two {
                Some(s) => s.clone(),
                None => rho.to_rank_two()?,
            };
            let found = max_concurrence_search_with(&s, &search_config(&a.common))?;
            ConcurrenceReport {
                concurrence: found.value,
                method: "search",
                params: Some(found.params),
            }
        }
    };
    let text = match a.common.format {
        Format::Json => io::to_json(&report)?,
        Format::Text => format!("{} concurrence: {:e}\n", report.method, report.concurrence),
    };
    emit(&a.common, &text)?;
    Ok(OK)
}

#[derive(Serialize)]
struct PptReport {
    is_ppt: bool,
    min_eig: f64,
    psd_test: String,
}

pub fn ppt(a: &PptArgs) -> Result<u8> {
    let state = load(&a.input)?;
    let rho = &state.density;
    let test = psd_test_registry();
    let strategy = test.get(&a.psd_test)?;
    let (_, min_eig) = ppt_test(rho)?;
    let pt = partial_transpose_a(rho.matrix(), rho.n_a(), rho.n_b())?;
    let is_ppt = strategy.is_psd(&pt)?;
    let report = PptReport {
        is_ppt,
        min_eig,
        psd_test: a.psd_test.clone(),
    };
    let text = match a.common.format {
        Format::Json => io::to_json(&report)?,
        Format::Text => format!("ppt: {is_ppt}\nmin_eig: {min_eig:e}\n"),
    };
    emit(&a.common, &text)?;
    Ok(if is_ppt { OK } else { ENTANGLED })
}

#[derive(Serialize)]
struct SweepRow {
    q1: f64,
    phi: f64,
    max_concurrence: f64,
    ppt_min_eig: f64,
}

fn grid(min: f64, max: f64, steps: usize, name: &str) -> Result<Vec<f64>> {
    if steps == 0 || !min.is_finite() || !max.is_finite() || min > max {
        bail!("invalid {name} grid: [{min}, {max}] with {steps} steps");
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps).map(|k| min + h * k as f64).collect())
}

pub fn sweep(a: &SweepArgs) -> Result<u8> {
    let q1s = grid(a.q1_min, a.q1_max, a.q1_steps, "q1")?;
    if a.q1_min <= 0.0 || a.q1_max >= 1.0 {
        bail!("q1 must lie in (0, 1), got [{}, {}]", a.q1_min, a.q1_max);
    }
    let phis = grid(a.phi_min, a.phi_max, a.phi_steps, "phi")?;
    let points: Vec<(f64, f64)> = q1s
        .iter()
        .flat_map(|&q1| phis.iter().map(move |&phi| (q1, phi)))
        .collect();
    let base = search_config(&a.common);

    let rows = points
        .par_iter()
        .enumerate()
        .map(|(k, &(q1, phi))| -> Result<SweepRow> {
            let seed = rng::derive_seed(a.common.seed, k as u64);
            let mut s = make_zce(q1, phi)?;
            if a.rotate {
                let (x1, x2) = random_local_unitaries(&mut rng::seeded(seed));
                s = s.local_transform(&x1, &x2)?;
            }
            let cfg = SearchConfig {
                seed,
                ..base.clone()
            };
            let found = max_concurrence_search_with(&s, &cfg)?;
            let (_, ppt_min_eig) = ppt_test(&s.density())?;
            log::debug!("q1 {q1} phi {phi}: concurrence {:e}", found.value);
            Ok(SweepRow {
                q1,
                phi,
                max_concurrence: found.value,
                ppt_min_eig,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    for r in &rows {
        if r.max_concurrence > tol::ZERO_CONCURRENCE || r.ppt_min_eig >= -tol::WITNESS {
            log::warn!(
                "row q1 {} phi {} is not zero-concurrence entangled: concurrence {:e}, ppt {:e}",
                r.q1,
                r.phi,
                r.max_concurrence,
                r.ppt_min_eig
            );
        }
    }

    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        writer.serialize(r)?;
    }
    let bytes = writer.into_inner().context("flushing CSV")?;
    emit(&a.common, &String::from_utf8(bytes)?)?;
    Ok(OK)
}

//! Input schema: a generator pair as row-major 2×2 real matrices, in either
//! the upper-half-plane or the unit-disc model. Disc-model input is
//! transported to the half-plane, which is the computational model
//! throughout; the disc is used only for rendering.

use anyhow::{bail, Context, Result};
use gm_core::moebius::Moebius;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// How loosely the input determinant may differ from one. Entries are taken
/// at face value as lifts, so a determinant far from one signals a schema
/// violation rather than a scaling to silently absorb.
const DET_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Uhp,
    Disc,
}

impl std::str::FromStr for Model {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Model> {
        match s {
            "uhp" => Ok(Model::Uhp),
            "disc" => Ok(Model::Disc),
            other => bail!("unknown model {other:?}; expected \"uhp\" or \"disc\""),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    model: Option<Model>,
    #[serde(rename = "A")]
    a: [[f64; 2]; 2],
    #[serde(rename = "B")]
    b: [[f64; 2]; 2],
}

/// A validated generator pair in the half-plane model, plus its normalized
/// form for embedding into output documents.
#[derive(Debug, Clone)]
pub struct PairInput {
    pub a: Moebius,
    pub b: Moebius,
}

impl PairInput {
    /// The normalized input that output documents embed: half-plane model,
    /// determinant-one lifts with nonnegative trace.
    pub fn normalized(&self) -> NormalizedInput {
        NormalizedInput {
            model: Model::Uhp,
            a: matrix_of(&self.a),
            b: matrix_of(&self.b),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalizedInput {
    pub model: Model,
    #[serde(rename = "A")]
    pub a: [[f64; 2]; 2],
    #[serde(rename = "B")]
    pub b: [[f64; 2]; 2],
}

pub fn matrix_of(m: &Moebius) -> [[f64; 2]; 2] {
    [[m.a, m.b], [m.c, m.d]]
}

/// Parses and validates one input document. `default_model` is the
/// `--model` flag value, used when the document does not name a model.
pub fn parse_input(json: &str, default_model: Model) -> Result<PairInput> {
    let raw: RawInput = serde_json::from_str(json).context("malformed input JSON")?;
    let model = raw.model.unwrap_or(default_model);
    let a = ingest(&raw.a, model).context("generator A")?;
    let b = ingest(&raw.b, model).context("generator B")?;
    Ok(PairInput { a, b })
}

fn ingest(m: &[[f64; 2]; 2], model: Model) -> Result<Moebius> {
    let flat = [m[0][0], m[0][1], m[1][0], m[1][1]];
    if flat.iter().any(|e| !e.is_finite()) {
        bail!("matrix entries must be finite");
    }
    match model {
        Model::Uhp => {
            let det = flat[0] * flat[3] - flat[1] * flat[2];
            if (det - 1.0).abs() > DET_TOLERANCE {
                bail!("determinant {det} differs from 1 beyond tolerance");
            }
            Ok(Moebius::generator(flat[0], flat[1], flat[2], flat[3])?)
        }
        Model::Disc => disc_to_uhp(flat),
    }
}

/// Disc-model matrices encode the complex pair (α, β) of the isometry
/// w ↦ (αw + β)/(β̄w + ᾱ) as [[Re α, Im α], [Re β, Im β]]. The Cayley
/// conjugation carries it to a real half-plane matrix.
fn disc_to_uhp(flat: [f64; 4]) -> Result<Moebius> {
    let alpha = Complex64::new(flat[0], flat[1]);
    let beta = Complex64::new(flat[2], flat[3]);
    let det = alpha.norm_sqr() - beta.norm_sqr();
    if (det - 1.0).abs() > DET_TOLERANCE {
        bail!("determinant {det} differs from 1 beyond tolerance");
    }
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    // T = (1, −i; 1, i) sends the half-plane to the disc; X = T⁻¹·M·T.
    let t = [one, -i, one, i];
    let tinv_scale = one / (2.0 * i);
    let tinv = [i * tinv_scale, i * tinv_scale, -tinv_scale, tinv_scale];
    let m = [alpha, beta, beta.conj(), alpha.conj()];
    let mt = cmul(&m, &t);
    let x = cmul(&tinv, &mt);
    for e in &x {
        if e.im.abs() > 1e-6 {
            bail!("matrix is not a disc-model isometry (conjugation is not real)");
        }
    }
    Ok(Moebius::generator(x[0].re, x[1].re, x[2].re, x[3].re)?)
}

fn cmul(x: &[Complex64; 4], y: &[Complex64; 4]) -> [Complex64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_uhp_input() {
        let p = parse_input(
            r#"{"model":"uhp","A":[[1,2],[0,1]],"B":[[1,0],[2,1]]}"#,
            Model::Uhp,
        )
        .unwrap();
        assert_eq!(p.a.b, 2.0);
        assert_eq!(p.b.c, 2.0);
    }

    #[test]
    fn rejects_bad_determinant_and_unknown_fields() {
        assert!(parse_input(r#"{"A":[[2,0],[0,1]],"B":[[1,0],[0,1]]}"#, Model::Uhp).is_err());
        assert!(parse_input(
            r#"{"A":[[1,0],[0,1]],"B":[[1,0],[0,1]],"extra":1}"#,
            Model::Uhp
        )
        .is_err());
        assert!(parse_input("not json", Model::Uhp).is_err());
    }

    #[test]
    fn disc_round_trips_trace() {
        // A half-plane hyperbolic, pushed to the disc by hand, must come back
        // with the same trace.
        let x = Moebius::new(2.0, 0.0, 0.0, 0.5).unwrap();
        let d = x.to_disc();
        let json = format!(
            r#"{{"model":"disc","A":[[{},{}],[{},{}]],"B":[[1,0],[0,0]]}}"#,
            d.a.re, d.a.im, d.b.re, d.b.im
        );
        // B is the identity as a disc pair (α, β) = (1, 0); only A matters.
        let p = parse_input(&json, Model::Uhp).unwrap();
        assert!((p.a.trace().abs() - 2.5).abs() < 1e-9);
    }
}

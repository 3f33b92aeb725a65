use serde::Serialize;

use crate::exact::rational::serde_rational;
use crate::exact::{AlgebraicNumber, Rational};

use super::Quadrisecant;

/// Serialized form of one secant; edges are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct SecantView {
    pub edge: usize,
    pub parameter: AlgebraicNumber,
    pub point: [AlgebraicNumber; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadrisecantView {
    pub edges: [usize; 4],
    pub secants: Vec<SecantView>,
    #[serde(with = "serde_rational")]
    pub radicand: Rational,
    pub x_root: AlgebraicNumber,
}

impl From<&Quadrisecant> for QuadrisecantView {
    fn from(q: &Quadrisecant) -> Self {
        QuadrisecantView {
            edges: q.secants.each_ref().map(|s| s.edge + 1),
            secants: q
                .secants
                .iter()
                .map(|s| SecantView {
                    edge: s.edge + 1,
                    parameter: s.parameter.clone(),
                    point: [s.point.x.clone(), s.point.y.clone(), s.point.z.clone()],
                })
                .collect(),
            radicand: q.radicand.clone(),
            x_root: q.x_root.clone(),
        }
    }
}

/// One row per secant point: `line,edge,parameter,x,y,z` in decimals.
pub fn quadrisecants_csv(quads: &[Quadrisecant], digits: usize) -> String {
    let mut out = String::from("line,edge,parameter,x,y,z\n");
    for (n, q) in quads.iter().enumerate() {
        for s in &q.secants {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                n + 1,
                s.edge + 1,
                s.parameter.to_decimal(digits),
                s.point.x.to_decimal(digits),
                s.point.y.to_decimal(digits),
                s.point.z.to_decimal(digits),
            ));
        }
    }
    out
}

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::Vec3;

use super::{KnotError, PolygonalKnot};

/// On-disk form: `{"name": ..., "vertices": [["x","y","z"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnotFile {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub approximate: bool,
}

impl KnotFile {
    pub fn from_knot(k: &PolygonalKnot) -> Self {
        KnotFile {
            name: k.name().to_string(),
            vertices: k
                .vertices()
                .iter()
                .map(|v| [format_rational(&v.x), format_rational(&v.y), format_rational(&v.z)])
                .collect(),
            approximate: false,
        }
    }

    pub fn to_knot(&self) -> Result<PolygonalKnot, KnotError> {
        let mut vs = Vec::with_capacity(self.vertices.len());
        for (i, [x, y, z]) in self.vertices.iter().enumerate() {
            let parse = |s: &str| parse_rational(s).map_err(|source| KnotError::Coordinate { vertex: i, source });
            vs.push(Vec3::new(parse(x)?, parse(y)?, parse(z)?));
        }
        PolygonalKnot::new(self.name.clone(), vs)
    }
}

impl PolygonalKnot {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&KnotFile::from_knot(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, KnotError> {
        let file: KnotFile = serde_json::from_str(text)?;
        file.to_knot()
    }
}

pub fn load_knot(path: impl AsRef<Path>) -> Result<PolygonalKnot, KnotError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| KnotError::Io {
        path: path.display().to_string(),
        source,
    })?;
    PolygonalKnot::from_json(&text)
}

pub fn save_knot(k: &PolygonalKnot, path: impl AsRef<Path>) -> Result<(), KnotError> {
    let path = path.as_ref();
    fs::write(path, k.to_json() + "\n").map_err(|source| KnotError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::knot::builtin_knot;

    #[test]
    fn round_trip_k6() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k6.json");
        let k = builtin_knot("k6").unwrap();
        save_knot(&k, &path).unwrap();
        assert_eq!(load_knot(&path).unwrap(), k);
    }

    #[test]
    fn decimals_become_exact() {
        let k = PolygonalKnot::from_json(
            r#"{"name":"d","vertices":[["0.1","0","0"],["1","0","0"],["0","1","0"],["0","0","1"]]}"#,
        )
        .unwrap();
        assert_eq!(k.vertex(0).x, rat(1, 10));
    }

    #[test]
    fn malformed_inputs() {
        let two = r#"{"name":"t","vertices":[["0","0","0"],["1","0","0"]]}"#;
        assert!(matches!(PolygonalKnot::from_json(two), Err(KnotError::TooFewVertices(2))));
        let bad = r#"{"name":"t","vertices":[["x","0","0"],["1","0","0"],["0","1","0"]]}"#;
        assert!(matches!(PolygonalKnot::from_json(bad), Err(KnotError::Coordinate { vertex: 0, .. })));
        assert!(matches!(PolygonalKnot::from_json("{"), Err(KnotError::Json(_))));
        let rep = r#"{"name":"t","vertices":[["0","0","0"],["0","0","0"],["0","1","0"]]}"#;
        assert!(matches!(PolygonalKnot::from_json(rep), Err(KnotError::ZeroEdge { .. })));
    }
}

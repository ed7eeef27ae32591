//! JSON gluing tables and framing curve files.

use serde::{Deserialize, Serialize};
use spunnorm_core::link::DualCycle;
use spunnorm_core::{Gluing, Perm, Tetrahedron, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("wrong arity: tet {tet} has {got} gluing entries, expected 4")]
    Arity { tet: usize, got: usize },
    #[error("out-of-range tet index {target} (tet {tet}, face {face})")]
    TetOutOfRange {
        tet: usize,
        face: usize,
        target: usize,
    },
    #[error("non-permutation perm (tet {tet}, face {face})")]
    NotPermutation { tet: usize, face: usize },
    #[error("curve {0:?} missing")]
    MissingCurve(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let msg = e.to_string();
        let msg = match msg.rfind(" at line ") {
            Some(i) => msg[..i].to_string(),
            None => msg,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            msg,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGluing {
    tet: usize,
    perm: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTet {
    gluings: Vec<Option<RawGluing>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriangulation {
    name: String,
    tetrahedra: Vec<RawTet>,
}

/// Shape checks only; a `null` gluing leaves the face open for `validate` to
/// report.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, FormatError> {
    let raw: RawTriangulation = serde_json::from_str(text)?;
    let n = raw.tetrahedra.len();
    let mut tets = Vec::with_capacity(n);
    for (t, rt) in raw.tetrahedra.into_iter().enumerate() {
        if rt.gluings.len() != 4 {
            return Err(FormatError::Arity {
                tet: t,
                got: rt.gluings.len(),
            });
        }
        let mut gluings = [None; 4];
        for (f, g) in rt.gluings.into_iter().enumerate() {
            let Some(g) = g else { continue };
            if g.tet >= n {
                return Err(FormatError::TetOutOfRange {
                    tet: t,
                    face: f,
                    target: g.tet,
                });
            }
            let images: [u8; 4] = g
                .perm
                .try_into()
                .map_err(|_| FormatError::NotPermutation { tet: t, face: f })?;
            let perm = Perm::new(images).ok_or(FormatError::NotPermutation { tet: t, face: f })?;
            gluings[f] = Some(Gluing { tet: g.tet, perm });
        }
        tets.push(Tetrahedron { gluings });
    }
    Ok(Triangulation::new(raw.name, tets))
}

/// One tetrahedron per line.
pub fn write_triangulation(tri: &Triangulation) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\n  \"name\": {},\n  \"tetrahedra\": [\n",
        serde_json::to_string(&tri.name).unwrap()
    ));
    for (t, tet) in tri.tets.iter().enumerate() {
        let gl: Vec<String> = tet
            .gluings
            .iter()
            .map(|g| match g {
                Some(g) => format!("{{\"tet\": {}, \"perm\": {:?}}}", g.tet, g.perm.0),
                None => "null".to_string(),
            })
            .collect();
        let sep = if t + 1 < tri.tets.len() { "," } else { "" };
        out.push_str(&format!(
            "    {{\"gluings\": [{}]}}{}\n",
            gl.join(", "),
            sep
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCurve {
    pub name: String,
    pub steps: Vec<(usize, u8)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub vertex: usize,
    pub curves: Vec<NamedCurve>,
}

impl CurveFile {
    pub fn get(&self, name: &str) -> Result<DualCycle, FormatError> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .map(|c| DualCycle {
                steps: c.steps.clone(),
            })
            .ok_or_else(|| FormatError::MissingCurve(name.to_string()))
    }
}

pub fn parse_curves(text: &str) -> Result<CurveFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_curves(c: &CurveFile) -> String {
    let mut out = format!("{{\n  \"vertex\": {},\n  \"curves\": [\n", c.vertex);
    for (i, cv) in c.curves.iter().enumerate() {
        let steps: Vec<String> = cv
            .steps
            .iter()
            .map(|(k, s)| format!("[{k}, {s}]"))
            .collect();
        let sep = if i + 1 < c.curves.len() { "," } else { "" };
        out.push_str(&format!(
            "    {{\"name\": {}, \"steps\": [{}]}}{}\n",
            serde_json::to_string(&cv.name).unwrap(),
            steps.join(", "),
            sep
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: &str = r#"{"name": "x", "tetrahedra": [{"gluings": [
        {"tet": 0, "perm": [1,2,0,3]}, {"tet": 0, "perm": [2,0,1,3]},
        {"tet": 0, "perm": [0,2,3,1]}, {"tet": 0, "perm": [0,3,1,2]}]}]}"#;

    #[test]
    fn one_tet_parses() {
        let t = parse_triangulation(ONE).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(t.name, "x");
    }

    #[test]
    fn round_trip() {
        let t = parse_triangulation(ONE).unwrap();
        assert_eq!(parse_triangulation(&write_triangulation(&t)).unwrap(), t);
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_triangulation("{\"name\": \"x\",\n  \"tetrahedra\": [}").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn shape_errors() {
        let three = ONE.replace(", {\"tet\": 0, \"perm\": [0,3,1,2]}", "");
        assert_eq!(
            parse_triangulation(&three).unwrap_err(),
            FormatError::Arity { tet: 0, got: 3 }
        );
        let far = ONE.replace(
            "{\"tet\": 0, \"perm\": [1,2,0,3]}",
            "{\"tet\": 5, \"perm\": [1,2,0,3]}",
        );
        assert_eq!(
            parse_triangulation(&far).unwrap_err(),
            FormatError::TetOutOfRange {
                tet: 0,
                face: 0,
                target: 5
            }
        );
        let bad = ONE.replace("[1,2,0,3]", "[1,1,0,3]");
        assert_eq!(
            parse_triangulation(&bad).unwrap_err(),
            FormatError::NotPermutation { tet: 0, face: 0 }
        );
        let short = ONE.replace("[1,2,0,3]", "[1,2,0]");
        assert_eq!(
            parse_triangulation(&short).unwrap_err(),
            FormatError::NotPermutation { tet: 0, face: 0 }
        );
    }

    #[test]
    fn null_is_an_open_face() {
        let open = ONE.replace("{\"tet\": 0, \"perm\": [1,2,0,3]}", "null");
        let t = parse_triangulation(&open).unwrap();
        assert!(t.tets[0].gluings[0].is_none());
        assert!(!t.validate().is_valid());
    }

    #[test]
    fn curves_round_trip() {
        let c = CurveFile {
            vertex: 0,
            curves: vec![NamedCurve {
                name: "mu".into(),
                steps: vec![(0, 1), (3, 2)],
            }],
        };
        assert_eq!(parse_curves(&write_curves(&c)).unwrap(), c);
        assert!(c.get("lambda").is_err());
    }
}

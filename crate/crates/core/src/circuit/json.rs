//! Circuit JSON: `{"n": int, "gates": [{"kind", "targets", "controls", "angle"}]}`.
//!
//! Kinds: `h x y p ry rz` name the base gate (any of them may carry
//! `controls`); `cx` is an X with exactly one control and `ctrl` is an X
//! with any other control list. Polarities are 0 or 1.

use serde::{Deserialize, Serialize};

use super::{Circuit, Control, Gate, GateKind};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    n: usize,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    kind: String,
    targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    controls: Vec<(usize, u8)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

impl GateDoc {
    fn from_gate(g: &Gate) -> Self {
        let kind = match g.kind {
            GateKind::X if g.controls.len() == 1 && g.controls[0].polarity => "cx",
            GateKind::X if !g.controls.is_empty() => "ctrl",
            k => k.name(),
        };
        GateDoc {
            kind: kind.to_string(),
            targets: vec![g.target],
            controls: g.controls.iter().map(|c| (c.qubit, c.polarity as u8)).collect(),
            angle: g.kind.angle(),
        }
    }

    fn into_gate(self) -> Result<Gate> {
        let [target] = self.targets[..] else {
            return Err(Error::InvalidParameter(format!("gate `{}` needs exactly one target, got {}", self.kind, self.targets.len())));
        };
        let controls = self
            .controls
            .iter()
            .map(|&(q, p)| match p {
                0 => Ok(Control::off(q)),
                1 => Ok(Control::on(q)),
                _ => Err(Error::InvalidParameter(format!("control polarity must be 0 or 1, got {p}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let need_angle = |a: Option<f64>| a.ok_or_else(|| Error::InvalidParameter(format!("gate `{}` needs an angle", self.kind)));
        let no_angle = || match self.angle {
            Some(_) => Err(Error::InvalidParameter(format!("gate `{}` takes no angle", self.kind))),
            None => Ok(()),
        };
        let kind = match self.kind.as_str() {
            "h" => no_angle().map(|_| GateKind::H)?,
            "x" => no_angle().map(|_| GateKind::X)?,
            "y" => no_angle().map(|_| GateKind::Y)?,
            "p" => GateKind::Phase(need_angle(self.angle)?),
            "ry" => GateKind::Ry(need_angle(self.angle)?),
            "rz" => GateKind::Rz(need_angle(self.angle)?),
            "cx" | "ctrl" => {
                no_angle()?;
                if controls.is_empty() || (self.kind == "cx" && controls.len() != 1) {
                    return Err(Error::InvalidParameter(format!("`{}` has the wrong number of controls", self.kind)));
                }
                GateKind::X
            }
            other => return Err(Error::UnknownGateKind(other.to_string())),
        };
        Ok(Gate { kind, target, controls })
    }
}

impl Circuit {
    pub fn to_json(&self) -> String {
        let doc = CircuitDoc { n: self.num_qubits, gates: self.gates.iter().map(GateDoc::from_gate).collect() };
        serde_json::to_string(&doc).expect("circuit documents always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        let doc = CircuitDoc { n: self.num_qubits, gates: self.gates.iter().map(GateDoc::from_gate).collect() };
        serde_json::to_string_pretty(&doc).expect("circuit documents always serialize")
    }

    /// Parses and validates untrusted circuit JSON.
    pub fn from_json(text: &str) -> Result<Circuit> {
        let doc: CircuitDoc = serde_json::from_str(text)?;
        let gates = doc.gates.into_iter().map(GateDoc::into_gate).collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(doc.n, gates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_kinds() {
        let text = r#"{"n":3,"gates":[
            {"kind":"h","targets":[0]},
            {"kind":"p","targets":[1],"angle":0.25},
            {"kind":"cx","targets":[2],"controls":[[0,1]]},
            {"kind":"ctrl","targets":[2],"controls":[[0,0],[1,1]]},
            {"kind":"ry","targets":[0],"controls":[[2,0]],"angle":-1.5}
        ]}"#;
        let c = Circuit::from_json(text).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.gates()[3].controls, vec![Control::off(0), Control::on(1)]);
        let again = Circuit::from_json(&c.to_json()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn rejects_malformed_gates() {
        for bad in [
            r#"{"n":1,"gates":[{"kind":"q","targets":[0]}]}"#,
            r#"{"n":1,"gates":[{"kind":"p","targets":[0]}]}"#,
            r#"{"n":1,"gates":[{"kind":"h","targets":[0],"angle":1.0}]}"#,
            r#"{"n":2,"gates":[{"kind":"cx","targets":[1]}]}"#,
            r#"{"n":2,"gates":[{"kind":"cx","targets":[1],"controls":[[0,2]]}]}"#,
            r#"{"n":2,"gates":[{"kind":"x","targets":[0,1]}]}"#,
            r#"{"n":2,"gates":[{"kind":"x","targets":[2]}]}"#,
            r#"{"n":2,"gates":[{"kind":"cx","targets":[1],"controls":[[1,1]]}]}"#,
            r#"{"n":2,"gates":[],"extra":1}"#,
        ] {
            assert!(Circuit::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn angles_round_trip_bit_exact() {
        let mut c = Circuit::new(1);
        c.p(0, 0.1 + 0.2).rz(0, std::f64::consts::PI / 3.0).ry(0, -1e-300);
        let back = Circuit::from_json(&c.to_json()).unwrap();
        for (a, b) in c.gates().iter().zip(back.gates()) {
            assert_eq!(a.kind.angle().unwrap().to_bits(), b.kind.angle().unwrap().to_bits());
        }
    }
}

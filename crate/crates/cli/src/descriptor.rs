//! Boundary pair descriptors: canonical JSON and the `key=value` flag form.

use catenoid::geometry::GeometryError;
use catenoid::{BoundaryPair, CircleSpec, CountError, RotationClass, Side};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One circle of a descriptor. Which fields are required depends on the
/// rotation class: `z, r` (elliptic), `x, r, side` (hyperbolic, side
/// defaults to 1), `a, c` (parabolic).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleFields {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<RotationClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<RotationClass>,
    pub circle1: CircleFields,
    pub circle2: CircleFields,
}

fn input(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Input {
        path: path.into(),
        message: message.into(),
    }
}

impl CircleFields {
    fn from_spec(c: &CircleSpec) -> Self {
        let mut f = Self::default();
        match *c {
            CircleSpec::Elliptic { z, r } => {
                f.z = Some(z);
                f.r = Some(r);
            }
            CircleSpec::HyperbolicI { x, r, side } | CircleSpec::HyperbolicII { x, r, side } => {
                f.x = Some(x);
                f.r = Some(r);
                f.side = Some(side);
            }
            CircleSpec::Parabolic { a, c } => {
                f.a = Some(a);
                f.c = Some(c);
            }
        }
        f
    }

    fn to_spec(self, class: RotationClass, name: &str) -> Result<CircleSpec, CliError> {
        let need = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| input(format!("{name}.{key}"), format!("required for {class} circles")))
        };
        let unused = |present: bool, key: &str| {
            if present {
                Err(input(format!("{name}.{key}"), format!("not used by {class} circles")))
            } else {
                Ok(())
            }
        };
        let spec = match class {
            RotationClass::Elliptic => {
                unused(self.x.is_some(), "x")?;
                unused(self.side.is_some(), "side")?;
                unused(self.a.is_some(), "a")?;
                unused(self.c.is_some(), "c")?;
                CircleSpec::Elliptic {
                    z: need(self.z, "z")?,
                    r: need(self.r, "r")?,
                }
            }
            RotationClass::HyperbolicI | RotationClass::HyperbolicII => {
                unused(self.z.is_some(), "z")?;
                unused(self.a.is_some(), "a")?;
                unused(self.c.is_some(), "c")?;
                let (x, r) = (need(self.x, "x")?, need(self.r, "r")?);
                let side = self.side.unwrap_or(Side::Positive);
                if class == RotationClass::HyperbolicI {
                    CircleSpec::HyperbolicI { x, r, side }
                } else {
                    CircleSpec::HyperbolicII { x, r, side }
                }
            }
            RotationClass::Parabolic => {
                unused(self.z.is_some(), "z")?;
                unused(self.x.is_some(), "x")?;
                unused(self.r.is_some(), "r")?;
                unused(self.side.is_some(), "side")?;
                CircleSpec::Parabolic {
                    a: need(self.a, "a")?,
                    c: need(self.c, "c")?,
                }
            }
        };
        spec.validate().map_err(|e| match e {
            GeometryError::InvalidCircle { field, reason } => input(format!("{name}.{field}"), reason),
            other => input(name, other.to_string()),
        })?;
        Ok(spec)
    }

    /// Parses the flag form `z=-10,r=1` (`side` accepts `1`, `-1`, `+`,
    /// `-`, `positive`, `negative`).
    pub fn parse_flag(text: &str, name: &str) -> Result<Self, CliError> {
        let mut f = Self::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| input(name, format!("expected key=value, got `{item}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let path = format!("{name}.{key}");
            let num = || {
                value
                    .parse::<f64>()
                    .map_err(|_| input(path.clone(), format!("`{value}` is not a number")))
            };
            let slot = match key {
                "z" => &mut f.z,
                "x" => &mut f.x,
                "r" => &mut f.r,
                "a" => &mut f.a,
                "c" => &mut f.c,
                "side" => {
                    f.side = Some(match value.to_ascii_lowercase().as_str() {
                        "1" | "+1" | "+" | "positive" => Side::Positive,
                        "-1" | "-" | "negative" => Side::Negative,
                        _ => return Err(input(path, format!("`{value}` is not a side (1 or -1)"))),
                    });
                    continue;
                }
                _ => return Err(input(path, "unknown field (expected z, x, r, side, a or c)")),
            };
            if slot.is_some() {
                return Err(input(path, "given twice"));
            }
            *slot = Some(num()?);
        }
        Ok(f)
    }
}

impl PairDescriptor {
    pub fn from_pair(pair: &BoundaryPair) -> Self {
        Self {
            class: Some(pair.class()),
            circle1: CircleFields::from_spec(&pair.circle1),
            circle2: CircleFields::from_spec(&pair.circle2),
        }
    }

    fn resolve_class(&self) -> Result<RotationClass, CliError> {
        let mut class = self.class;
        for (name, c) in [("circle1", &self.circle1), ("circle2", &self.circle2)] {
            match (class, c.class) {
                (Some(k), Some(ck)) if k != ck => {
                    return Err(input(
                        format!("{name}.class"),
                        format!("{ck} does not match the pair class {k}"),
                    ));
                }
                (None, Some(ck)) => class = Some(ck),
                _ => {}
            }
        }
        class.ok_or_else(|| input("class", "missing rotation class"))
    }

    pub fn to_pair(&self) -> Result<BoundaryPair, CliError> {
        let class = self.resolve_class()?;
        let c1 = self.circle1.to_spec(class, "circle1")?;
        let c2 = self.circle2.to_spec(class, "circle2")?;
        BoundaryPair::new(c1, c2).map_err(|e| match e {
            CountError::InvalidPair(msg) => input("circle2", msg),
            other => input("circle2", other.to_string()),
        })
    }
}

/// Parses a JSON pair descriptor. A document with a top-level `pair`
/// member (the output of `count`) is accepted too.
pub fn parse_descriptor(text: &str) -> Result<BoundaryPair, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| input("$", e.to_string()))?;
    let (value, prefix) = match value {
        serde_json::Value::Object(mut m) if m.contains_key("pair") && !m.contains_key("circle1") => {
            (m.remove("pair").unwrap_or_default(), "pair.")
        }
        v => (v, ""),
    };
    let desc: PairDescriptor = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        input(format!("{prefix}{path}"), e.into_inner().to_string())
    })?;
    desc.to_pair().map_err(|e| match e {
        CliError::Input { path, message } => input(format!("{prefix}{path}"), message),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_of(e: CliError) -> String {
        match e {
            CliError::Input { path, .. } => path,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn elliptic_json() {
        let p = parse_descriptor(r#"{"class":"elliptic","circle1":{"z":-10,"r":1},"circle2":{"z":10,"r":1}}"#).unwrap();
        assert_eq!(p.circle2, CircleSpec::elliptic(10.0, 1.0).unwrap());
    }

    #[test]
    fn zero_radius_names_the_field() {
        let e =
            parse_descriptor(r#"{"class":"elliptic","circle1":{"z":-1,"r":0},"circle2":{"z":1,"r":1}}"#).unwrap_err();
        assert_eq!(path_of(e), "circle1.r");
    }

    #[test]
    fn type_errors_name_the_field() {
        let e = parse_descriptor(r#"{"class":"elliptic","circle1":{"z":-1,"r":1},"circle2":{"z":"up","r":1}}"#)
            .unwrap_err();
        assert_eq!(path_of(e), "circle2.z");
        let e =
            parse_descriptor(r#"{"class":"hyperbolic_i","circle1":{"x":-1,"r":1,"side":3},"circle2":{"x":1,"r":1}}"#)
                .unwrap_err();
        assert_eq!(path_of(e), "circle1.side");
        let e = parse_descriptor(r#"{"class":"elliptic","circle1":{"z":-1,"r":1,"q":2},"circle2":{"z":1,"r":1}}"#)
            .unwrap_err();
        assert_eq!(path_of(e), "circle1.q");
    }

    #[test]
    fn missing_and_unused_fields() {
        let e = parse_descriptor(r#"{"class":"parabolic","circle1":{"a":1},"circle2":{"a":2,"c":0}}"#).unwrap_err();
        assert_eq!(path_of(e), "circle1.c");
        let e = parse_descriptor(r#"{"class":"elliptic","circle1":{"z":1,"r":1,"x":0},"circle2":{"z":2,"r":1}}"#)
            .unwrap_err();
        assert_eq!(path_of(e), "circle1.x");
        let e = parse_descriptor(r#"{"circle1":{"z":1,"r":1},"circle2":{"z":2,"r":1}}"#).unwrap_err();
        assert_eq!(path_of(e), "class");
    }

    #[test]
    fn class_can_come_from_the_circles() {
        let pair = BoundaryPair::new(
            CircleSpec::hyperbolic_ii(-1.0, 2.0, Side::Negative).unwrap(),
            CircleSpec::hyperbolic_ii(1.5, 0.5, Side::Positive).unwrap(),
        )
        .unwrap();
        assert_eq!(parse_descriptor(&serde_json::to_string(&pair).unwrap()).unwrap(), pair);
    }

    #[test]
    fn flag_form() {
        let f = CircleFields::parse_flag("x=-1, r=2, side=-1", "circle1").unwrap();
        assert_eq!(f.side, Some(Side::Negative));
        assert_eq!(f.x, Some(-1.0));
        assert_eq!(
            path_of(CircleFields::parse_flag("r=abc", "circle2").unwrap_err()),
            "circle2.r"
        );
        assert_eq!(
            path_of(CircleFields::parse_flag("w=1", "circle1").unwrap_err()),
            "circle1.w"
        );
    }

    #[test]
    fn descriptor_round_trip() {
        for pair in [
            BoundaryPair::new(
                CircleSpec::elliptic(-0.1, 1.0 / 3.0).unwrap(),
                CircleSpec::elliptic(0.7, 2.0).unwrap(),
            )
            .unwrap(),
            BoundaryPair::new(
                CircleSpec::parabolic(0.3, -1.0).unwrap(),
                CircleSpec::parabolic(2.0, 1.0).unwrap(),
            )
            .unwrap(),
        ] {
            let text = serde_json::to_string(&PairDescriptor::from_pair(&pair)).unwrap();
            assert_eq!(parse_descriptor(&text).unwrap(), pair);
        }
    }
}

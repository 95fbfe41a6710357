use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{
    class_via_divided_diff, class_x, class_y_ss, class_y_unip, components_x, components_y_ss, unip_scale, DlError,
};
use crate::permgroup::{Permutation, Twist};
use crate::polyring::{LaurentPoly, QPoly};
use crate::schubert::{Basis, FlagRing, SchubertVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    DLFrobenius,
    RegSemisimple,
    RegUnipotent,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::DLFrobenius => "dl",
            ClassKind::RegSemisimple => "ss",
            ClassKind::RegUnipotent => "unip",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassKind {
    type Err = DlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dl" => Ok(ClassKind::DLFrobenius),
            "ss" => Ok(ClassKind::RegSemisimple),
            "unip" => Ok(ClassKind::RegUnipotent),
            other => Err(DlError::Report(format!("unknown kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComputationPath {
    PairEnumeration,
    DividedDifference,
}

impl ComputationPath {
    pub fn as_str(self) -> &'static str {
        match self {
            ComputationPath::PairEnumeration => "pair-enumeration",
            ComputationPath::DividedDifference => "divided-difference",
        }
    }
}

impl FromStr for ComputationPath {
    type Err = DlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pair-enumeration" => Ok(ComputationPath::PairEnumeration),
            "divided-difference" => Ok(ComputationPath::DividedDifference),
            other => Err(DlError::Report(format!("unknown path {other:?}"))),
        }
    }
}

/// Number of irreducible components: a polynomial in `q` for `X(w)`, an
/// integer for `Y_{w,s}` and `Y_{w,u}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentCount {
    Polynomial(LaurentPoly),
    Integer(u64),
}

impl fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentCount::Polynomial(p) => f.write_str(&p.render("q")),
            ComponentCount::Integer(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub w: Permutation,
    pub twist: Twist,
    pub kind: ClassKind,
    /// In the basis of Schubert cycles `[C_a]`.
    pub vector: SchubertVector,
    pub path: ComputationPath,
    pub components: ComponentCount,
}

impl ClassReport {
    pub fn compute(
        ring: &FlagRing,
        w: &Permutation,
        twist: Twist,
        kind: ClassKind,
        path: ComputationPath,
    ) -> Result<ClassReport, DlError> {
        let one = num_rational::BigRational::from_integer(1.into());
        let vector = match (kind, path) {
            (ClassKind::DLFrobenius, ComputationPath::PairEnumeration) => class_x(ring, w, twist)?,
            (ClassKind::DLFrobenius, ComputationPath::DividedDifference) => class_via_divided_diff(w, twist)?,
            (ClassKind::RegSemisimple, ComputationPath::PairEnumeration) => class_y_ss(ring, w)?,
            (ClassKind::RegSemisimple, ComputationPath::DividedDifference) => {
                class_via_divided_diff(w, Twist::Trivial)?.eval_q(&one)
            }
            (ClassKind::RegUnipotent, ComputationPath::PairEnumeration) => class_y_unip(ring, w)?,
            (ClassKind::RegUnipotent, ComputationPath::DividedDifference) => {
                class_via_divided_diff(w, Twist::Trivial)?.eval_q(&one).scale(&unip_scale(w))
            }
        };
        let twist = if kind == ClassKind::DLFrobenius { twist } else { Twist::Trivial };
        let components = match kind {
            ClassKind::DLFrobenius => ComponentCount::Polynomial(components_x(w, twist)),
            ClassKind::RegSemisimple => ComponentCount::Integer(components_y_ss(w)),
            ClassKind::RegUnipotent => ComponentCount::Integer(1),
        };
        Ok(ClassReport { w: w.clone(), twist, kind, vector, path, components })
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    pub fn to_json(&self) -> Value {
        let class: Vec<Value> =
            self.vector.entries().map(|(v, c)| json!({ "v": v.word_string(), "coeff": c.render("q") })).collect();
        json!({
            "n": self.n(),
            "w": self.w.word_string(),
            "twist": self.twist.as_str(),
            "kind": self.kind.as_str(),
            "path": self.path.as_str(),
            "class": class,
            "components": self.components.to_string(),
        })
    }

    pub fn from_json(value: &Value) -> Result<ClassReport, DlError> {
        let bad = |what: &str| DlError::Report(format!("missing or invalid {what}"));
        let field = |name: &str| value.get(name).and_then(Value::as_str).ok_or_else(|| bad(name));
        let n = value.get("n").and_then(Value::as_u64).ok_or_else(|| bad("n"))? as usize;
        let w = Permutation::parse(field("w")?, n)?;
        let twist: Twist = field("twist")?.parse()?;
        let kind: ClassKind = field("kind")?.parse()?;
        let path: ComputationPath = match value.get("path") {
            Some(p) => p.as_str().ok_or_else(|| bad("path"))?.parse()?,
            None => ComputationPath::PairEnumeration,
        };
        let mut vector = SchubertVector::zero(n, Basis::Cycle);
        for entry in value.get("class").and_then(Value::as_array).ok_or_else(|| bad("class"))? {
            let v = entry.get("v").and_then(Value::as_str).ok_or_else(|| bad("class.v"))?;
            let c = entry.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("class.coeff"))?;
            vector.add(&Permutation::parse(v, n)?, &QPoly::parse(c, "q")?);
        }
        let comp = field("components")?;
        let components = match kind {
            ClassKind::DLFrobenius => ComponentCount::Polynomial(LaurentPoly::parse(comp, "q")?),
            _ => ComponentCount::Integer(comp.parse().map_err(|_| bad("components"))?),
        };
        Ok(ClassReport { w, twist, kind, vector, path, components })
    }

    /// Rows `w,basis_element,coefficient`.
    pub fn csv_rows(&self) -> Vec<[String; 3]> {
        self.vector.entries().map(|(v, c)| [self.w.word_string(), v.word_string(), c.render("q")]).collect()
    }

    /// Coefficients with `q` replaced by an integer.
    pub fn evaluated(&self, q: i64) -> ClassReport {
        let value = num_rational::BigRational::from_integer(BigInt::from(q));
        let mut out = self.clone();
        out.vector = self.vector.eval_q(&value);
        if let ComponentCount::Polynomial(p) = &self.components {
            let v = p.eval(&value).expect("polynomial");
            out.components = ComponentCount::Polynomial(LaurentPoly::constant(v.to_integer()));
        }
        out
    }
}

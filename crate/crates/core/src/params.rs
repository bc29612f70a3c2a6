use crate::error::SimError;

/// An angle argument of a gate: either a literal value in radians, or an
/// affine use of a named symbol, `coeff · symbol + offset`.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamExpr {
    Literal(f64),
    Symbol { name: String, coeff: f64, offset: f64 },
}

impl ParamExpr {
    pub fn lit(value: f64) -> Self {
        ParamExpr::Literal(value)
    }

    pub fn sym(name: impl Into<String>) -> Self {
        ParamExpr::Symbol { name: name.into(), coeff: 1.0, offset: 0.0 }
    }

    /// `coeff · symbol`, e.g. `±θ/2` terms in controlled-rotation decompositions.
    pub fn scaled_sym(name: impl Into<String>, coeff: f64) -> Self {
        ParamExpr::Symbol { name: name.into(), coeff, offset: 0.0 }
    }

    pub fn symbol_name(&self) -> Option<&str> {
        match self {
            ParamExpr::Literal(_) => None,
            ParamExpr::Symbol { name, .. } => Some(name),
        }
    }

    pub fn eval(&self, params: &ParamMap) -> Result<f64, SimError> {
        match self {
            ParamExpr::Literal(v) => Ok(*v),
            ParamExpr::Symbol { name, coeff, offset } => params
                .get(name)
                .map(|v| coeff * v + offset)
                .ok_or_else(|| SimError::UnboundSymbol(name.clone())),
        }
    }

    /// Substitutes `name = value` if this expression references it.
    pub(crate) fn bind(&self, name: &str, value: f64) -> ParamExpr {
        match self {
            ParamExpr::Symbol { name: n, coeff, offset } if n == name => {
                ParamExpr::Literal(coeff * value + offset)
            }
            other => other.clone(),
        }
    }
}

impl From<f64> for ParamExpr {
    fn from(v: f64) -> Self {
        ParamExpr::Literal(v)
    }
}

impl From<&str> for ParamExpr {
    fn from(name: &str) -> Self {
        ParamExpr::sym(name)
    }
}

impl From<String> for ParamExpr {
    fn from(name: String) -> Self {
        ParamExpr::sym(name)
    }
}

/// Binding of parameter symbols to angle values in radians.
///
/// Preserves insertion order, which fixes the component order of gradients
/// computed against the map.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamMap {
    bindings: Vec<(String, f64)>,
}

impl ParamMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut map = Self::new();
        for (name, value) in pairs {
            map.set(name, value);
        }
        map
    }

    /// Inserts or overwrites a binding.
    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        let name = name.into();
        match self.bindings.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.bindings.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.bindings.iter().map(|(n, v)| (n.as_str(), *v))
    }

    pub fn names(&self) -> Vec<String> {
        self.bindings.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.bindings.iter().map(|(_, v)| *v).collect()
    }

    /// Copy of the map with `name` shifted by `delta`.
    pub fn with_shifted(&self, name: &str, delta: f64) -> Result<ParamMap, SimError> {
        let mut out = self.clone();
        let v = out.get(name).ok_or_else(|| SimError::UnboundSymbol(name.to_string()))?;
        out.set(name, v + delta);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_order_preserved() {
        let map = ParamMap::from_pairs([("b", 1.0), ("a", 2.0), ("c", 3.0)]);
        assert_eq!(map.names(), vec!["b", "a", "c"]);
        assert_eq!(map.values(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn set_overwrites_in_place() {
        let mut map = ParamMap::from_pairs([("x", 1.0), ("y", 2.0)]);
        map.set("x", 9.0);
        assert_eq!(map.names(), vec!["x", "y"]);
        assert_eq!(map.get("x"), Some(9.0));
    }

    #[test]
    fn expr_eval() {
        let map = ParamMap::from_pairs([("beta", 2.0)]);
        assert_eq!(ParamExpr::lit(0.5).eval(&map).unwrap(), 0.5);
        assert_eq!(ParamExpr::sym("beta").eval(&map).unwrap(), 2.0);
        assert_eq!(ParamExpr::scaled_sym("beta", -0.5).eval(&map).unwrap(), -1.0);
        assert!(matches!(
            ParamExpr::sym("missing").eval(&map),
            Err(SimError::UnboundSymbol(_))
        ));
    }
}

use crate::error::SimError;
use crate::params::{ParamExpr, ParamMap};
use crate::C64;

/// Gate vocabulary. Controlled kinds carry their control in `Gate::controls`;
/// base single-qubit kinds may additionally carry an arbitrary control set,
/// which is how multi-controlled gates are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    I,
    Rx,
    Ry,
    Rz,
    U1,
    U2,
    U3,
    Cx,
    Cz,
    CRy,
    Ccx,
    Swap,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::I => "id",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::U1 => "u1",
            GateKind::U2 => "u2",
            GateKind::U3 => "u3",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::CRy => "cry",
            GateKind::Ccx => "ccx",
            GateKind::Swap => "swap",
        }
    }

    pub fn target_count(self) -> usize {
        match self {
            GateKind::Swap => 2,
            _ => 1,
        }
    }

    /// Number of controls the kind itself implies (explicit extra controls are
    /// only allowed on base single-qubit kinds and `Swap`).
    pub fn implied_controls(self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::CRy => 1,
            GateKind::Ccx => 2,
            _ => 0,
        }
    }

    pub fn angle_count(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::U1 | GateKind::CRy => 1,
            GateKind::U2 => 2,
            GateKind::U3 => 3,
            _ => 0,
        }
    }

    /// Kinds whose single angle enters as a standard rotation, admitting the
    /// exact two-point shift rule when used with coefficient ±1.
    pub fn is_shift_rule_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::U1)
    }

    fn fixed_matrix(self) -> Option<[C64; 4]> {
        let o = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Some(match self {
            GateKind::X | GateKind::Cx | GateKind::Ccx => [z, o, o, z],
            GateKind::Y => [z, -i, i, z],
            GateKind::Z | GateKind::Cz => [o, z, z, -o],
            GateKind::H => [h, h, h, -h],
            GateKind::S => [o, z, z, i],
            GateKind::Sdg => [o, z, z, -i],
            GateKind::T => [o, z, z, C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)],
            GateKind::Tdg => [o, z, z, C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)],
            GateKind::I => [o, z, z, o],
            _ => return None,
        })
    }
}

/// 2×2 matrix of a (possibly parameterized) single-qubit action, row-major.
pub fn single_qubit_matrix(kind: GateKind, angles: &[f64]) -> [C64; 4] {
    if let Some(m) = kind.fixed_matrix() {
        return m;
    }
    let z = C64::new(0.0, 0.0);
    match kind {
        GateKind::Rx => {
            let (c, s) = ((angles[0] / 2.0).cos(), (angles[0] / 2.0).sin());
            [C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0)]
        }
        GateKind::Ry | GateKind::CRy => {
            let (c, s) = ((angles[0] / 2.0).cos(), (angles[0] / 2.0).sin());
            [C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)]
        }
        GateKind::Rz => {
            let half = angles[0] / 2.0;
            [C64::from_polar(1.0, -half), z, z, C64::from_polar(1.0, half)]
        }
        GateKind::U1 => [C64::new(1.0, 0.0), z, z, C64::from_polar(1.0, angles[0])],
        GateKind::U2 => {
            let (phi, lam) = (angles[0], angles[1]);
            let r = std::f64::consts::FRAC_1_SQRT_2;
            [
                C64::new(r, 0.0),
                -C64::from_polar(r, lam),
                C64::from_polar(r, phi),
                C64::from_polar(r, phi + lam),
            ]
        }
        GateKind::U3 => {
            let (theta, phi, lam) = (angles[0], angles[1], angles[2]);
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            [
                C64::new(c, 0.0),
                -C64::from_polar(s, lam),
                C64::from_polar(s, phi),
                C64::from_polar(c, phi + lam),
            ]
        }
        _ => unreachable!("fixed matrices handled above"),
    }
}

/// One gate application: kind, target qubit(s), control qubits, angle args.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
    pub args: Vec<ParamExpr>,
}

impl Gate {
    pub fn new(
        kind: GateKind,
        targets: Vec<usize>,
        controls: Vec<usize>,
        args: Vec<ParamExpr>,
    ) -> Result<Self, SimError> {
        let gate = Gate { kind, targets, controls, args };
        gate.validate_shape()?;
        Ok(gate)
    }

    pub fn x(q: usize) -> Self {
        Self::plain(GateKind::X, q)
    }
    pub fn y(q: usize) -> Self {
        Self::plain(GateKind::Y, q)
    }
    pub fn z(q: usize) -> Self {
        Self::plain(GateKind::Z, q)
    }
    pub fn h(q: usize) -> Self {
        Self::plain(GateKind::H, q)
    }
    pub fn s(q: usize) -> Self {
        Self::plain(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Self {
        Self::plain(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Self {
        Self::plain(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Self {
        Self::plain(GateKind::Tdg, q)
    }
    pub fn id(q: usize) -> Self {
        Self::plain(GateKind::I, q)
    }

    pub fn rx(q: usize, angle: impl Into<ParamExpr>) -> Self {
        Self::rot(GateKind::Rx, q, angle)
    }
    pub fn ry(q: usize, angle: impl Into<ParamExpr>) -> Self {
        Self::rot(GateKind::Ry, q, angle)
    }
    pub fn rz(q: usize, angle: impl Into<ParamExpr>) -> Self {
        Self::rot(GateKind::Rz, q, angle)
    }
    pub fn u1(q: usize, angle: impl Into<ParamExpr>) -> Self {
        Self::rot(GateKind::U1, q, angle)
    }

    pub fn u2(q: usize, phi: impl Into<ParamExpr>, lam: impl Into<ParamExpr>) -> Self {
        Gate {
            kind: GateKind::U2,
            targets: vec![q],
            controls: vec![],
            args: vec![phi.into(), lam.into()],
        }
    }

    pub fn u3(
        q: usize,
        theta: impl Into<ParamExpr>,
        phi: impl Into<ParamExpr>,
        lam: impl Into<ParamExpr>,
    ) -> Self {
        Gate {
            kind: GateKind::U3,
            targets: vec![q],
            controls: vec![],
            args: vec![theta.into(), phi.into(), lam.into()],
        }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate { kind: GateKind::Cx, targets: vec![target], controls: vec![control], args: vec![] }
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Cz, targets: vec![b], controls: vec![a], args: vec![] }
    }

    pub fn cry(control: usize, target: usize, angle: impl Into<ParamExpr>) -> Self {
        Gate {
            kind: GateKind::CRy,
            targets: vec![target],
            controls: vec![control],
            args: vec![angle.into()],
        }
    }

    pub fn ccx(c0: usize, c1: usize, target: usize) -> Self {
        Gate { kind: GateKind::Ccx, targets: vec![target], controls: vec![c0, c1], args: vec![] }
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Swap, targets: vec![a, b], controls: vec![], args: vec![] }
    }

    pub fn cu1(control: usize, target: usize, angle: impl Into<ParamExpr>) -> Self {
        Gate {
            kind: GateKind::U1,
            targets: vec![target],
            controls: vec![control],
            args: vec![angle.into()],
        }
    }

    /// Single-qubit `kind` on `target` conditioned on every listed control.
    pub fn controlled(
        kind: GateKind,
        controls: Vec<usize>,
        target: usize,
        args: Vec<ParamExpr>,
    ) -> Result<Self, SimError> {
        Gate::new(kind, vec![target], controls, args)
    }

    fn plain(kind: GateKind, q: usize) -> Self {
        Gate { kind, targets: vec![q], controls: vec![], args: vec![] }
    }

    fn rot(kind: GateKind, q: usize, angle: impl Into<ParamExpr>) -> Self {
        Gate { kind, targets: vec![q], controls: vec![], args: vec![angle.into()] }
    }

    /// All qubits the gate touches, targets first.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets.iter().chain(self.controls.iter()).copied()
    }

    pub fn symbol_names(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|a| a.symbol_name())
    }

    /// Angle arguments evaluated against `params`.
    pub fn angles(&self, params: &ParamMap) -> Result<Vec<f64>, SimError> {
        self.args.iter().map(|a| a.eval(params)).collect()
    }

    pub(crate) fn validate_shape(&self) -> Result<(), SimError> {
        let kind_name = self.kind.name();
        if self.targets.len() != self.kind.target_count() {
            return Err(SimError::GateArity {
                kind: kind_name,
                what: "target(s)",
                expected: self.kind.target_count(),
                got: self.targets.len(),
            });
        }
        let implied = self.kind.implied_controls();
        if implied > 0 && self.controls.len() != implied {
            return Err(SimError::GateArity {
                kind: kind_name,
                what: "control(s)",
                expected: implied,
                got: self.controls.len(),
            });
        }
        // Multi-angle note: controlled U1 ("cu1") reuses the U1 kind with one
        // control, so U1 tolerates either zero or one control.
        if self.args.len() != self.kind.angle_count() {
            return Err(SimError::GateArity {
                kind: kind_name,
                what: "angle(s)",
                expected: self.kind.angle_count(),
                got: self.args.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn validate_qubits(
        &self,
        num_qubits: usize,
        gate_index: usize,
    ) -> Result<(), SimError> {
        let mut seen: Vec<usize> = Vec::with_capacity(self.targets.len() + self.controls.len());
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(SimError::QubitOutOfRange { qubit: q, num_qubits });
            }
            if seen.contains(&q) {
                return Err(SimError::DuplicateQubit { gate_index, qubit: q });
            }
            seen.push(q);
        }
        Ok(())
    }
}

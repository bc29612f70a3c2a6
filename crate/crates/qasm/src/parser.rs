use crate::error::QasmError;
use crate::lexer::{lex, Token, TokenKind};
use qverify_core::{Circuit, Gate, GateKind, ParamExpr};
use std::collections::HashMap;

/// Parse result: the realized circuit plus bookkeeping. Qubit order follows
/// `qreg` declaration order; `declared_qubits` is the sum over declarations.
#[derive(Debug, Clone)]
pub struct QasmProgram {
    pub source_name: String,
    pub declared_qubits: usize,
    pub circuit: Circuit,
    pub warnings: Vec<String>,
}

pub fn parse_qasm(text: &str) -> Result<QasmProgram, QasmError> {
    parse_qasm_named(text, "<input>")
}

pub fn parse_qasm_named(text: &str, source_name: &str) -> Result<QasmProgram, QasmError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        qregs: Vec::new(),
        cregs: Vec::new(),
        defs: HashMap::new(),
        gates: Vec::new(),
        warnings: Vec::new(),
    };
    parser.program()?;
    let declared_qubits: usize = parser.qregs.iter().map(|r| r.size).sum();
    if declared_qubits == 0 {
        return Err(QasmError::NoQubits);
    }
    let circuit = Circuit::from_gates(declared_qubits, parser.gates)?;
    Ok(QasmProgram {
        source_name: source_name.to_string(),
        declared_qubits,
        circuit,
        warnings: parser.warnings,
    })
}

struct QReg {
    name: String,
    offset: usize,
    size: usize,
}

/// A user gate definition; bodies reference formal parameter and qubit names
/// and are expanded inline at every call site.
struct GateDef {
    params: Vec<String>,
    qargs: Vec<String>,
    body: Vec<BodyCall>,
}

struct BodyCall {
    name: String,
    line: usize,
    col: usize,
    params: Vec<Expr>,
    /// Indices into the definition's formal qubit list.
    qargs: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Expr {
    Num(f64),
    Pi,
    Param(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Func(String, Box<Expr>),
}

impl Expr {
    fn eval(&self, env: &HashMap<String, f64>) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Pi => std::f64::consts::PI,
            Expr::Param(name) => env[name],
            Expr::Neg(e) => -e.eval(env),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(env), b.eval(env));
                match op {
                    '+' => a + b,
                    '-' => a - b,
                    '*' => a * b,
                    '/' => a / b,
                    _ => a.powf(b),
                }
            }
            Expr::Func(name, e) => {
                let v = e.eval(env);
                match name.as_str() {
                    "sin" => v.sin(),
                    "cos" => v.cos(),
                    "tan" => v.tan(),
                    "exp" => v.exp(),
                    "ln" => v.ln(),
                    _ => v.sqrt(),
                }
            }
        }
    }

    /// Names referenced by the expression, for arity checking in bodies.
    fn check_params(&self, allowed: &[String], at: (usize, usize)) -> Result<(), QasmError> {
        match self {
            Expr::Param(name) if !allowed.contains(name) => Err(QasmError::Syntax {
                line: at.0,
                col: at.1,
                msg: format!("unknown parameter `{name}`"),
            }),
            Expr::Neg(e) | Expr::Func(_, e) => e.check_params(allowed, at),
            Expr::Bin(_, a, b) => {
                a.check_params(allowed, at)?;
                b.check_params(allowed, at)
            }
            _ => Ok(()),
        }
    }
}

const FUNCTIONS: [&str; 6] = ["sin", "cos", "tan", "exp", "ln", "sqrt"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    qregs: Vec<QReg>,
    cregs: Vec<String>,
    defs: HashMap<String, GateDef>,
    gates: Vec<Gate>,
    warnings: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn at(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or_else(|| {
            self.tokens.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1))
        })
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, QasmError> {
        let (line, col) = self.at();
        Err(QasmError::Syntax { line, col, msg: msg.into() })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token, QasmError> {
        match self.peek() {
            Some(t) if &t.kind == kind => Ok(self.next().unwrap()),
            _ => self.syntax(format!("expected {what}")),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize, usize), QasmError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Ident(_), .. }) => {
                let t = self.next().unwrap();
                let TokenKind::Ident(name) = t.kind else { unreachable!() };
                Ok((name, t.line, t.col))
            }
            _ => self.syntax(format!("expected {what}")),
        }
    }

    fn eat_ident(&mut self, name: &str) -> bool {
        if matches!(self.peek(), Some(Token { kind: TokenKind::Ident(s), .. }) if s == name) {
            self.pos += 1;
            return true;
        }
        false
    }

    fn program(&mut self) -> Result<(), QasmError> {
        // Mandatory version header.
        if !self.eat_ident("OPENQASM") {
            return self.syntax("expected `OPENQASM 2.0;` header");
        }
        match self.next() {
            Some(Token { kind: TokenKind::Real(v), .. }) => {
                if v != 2.0 {
                    return self.syntax("only OPENQASM version 2.0 is supported");
                }
            }
            _ => return self.syntax("only OPENQASM version 2.0 is supported"),
        }
        self.expect(&TokenKind::Semicolon, "`;` after version")?;

        while self.peek().is_some() {
            self.statement()?;
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), QasmError> {
        let (line, col) = self.at();
        let Some(Token { kind: TokenKind::Ident(word), .. }) = self.peek() else {
            return self.syntax("expected a statement");
        };
        match word.as_str() {
            "include" => {
                self.pos += 1;
                let t = self.next();
                match t {
                    Some(Token { kind: TokenKind::Str(path), .. }) => {
                        if path != "qelib1.inc" {
                            return Err(QasmError::Unsupported {
                                line,
                                col,
                                what: format!("include \"{path}\""),
                            });
                        }
                    }
                    _ => return self.syntax("expected an include path string"),
                }
                self.expect(&TokenKind::Semicolon, "`;` after include")?;
            }
            "qreg" => {
                self.pos += 1;
                let (name, _, _) = self.expect_ident("register name")?;
                self.expect(&TokenKind::LBracket, "`[`")?;
                let size = self.expect_int()?;
                self.expect(&TokenKind::RBracket, "`]`")?;
                self.expect(&TokenKind::Semicolon, "`;`")?;
                if size == 0 {
                    return Err(QasmError::Syntax {
                        line,
                        col,
                        msg: format!("qreg `{name}` has size 0"),
                    });
                }
                let offset = self.qregs.iter().map(|r| r.size).sum();
                self.qregs.push(QReg { name, offset, size });
            }
            "creg" => {
                self.pos += 1;
                let (name, _, _) = self.expect_ident("register name")?;
                self.expect(&TokenKind::LBracket, "`[`")?;
                let size = self.expect_int()?;
                self.expect(&TokenKind::RBracket, "`]`")?;
                self.expect(&TokenKind::Semicolon, "`;`")?;
                self.cregs.push(name.clone());
                self.warnings.push(format!("line {line}: creg {name}[{size}] ignored"));
            }
            "gate" => {
                self.pos += 1;
                self.gate_definition()?;
            }
            "measure" => {
                self.skip_statement();
                self.warnings.push(format!("line {line}: measure skipped"));
            }
            "barrier" => {
                self.skip_statement();
                self.warnings.push(format!("line {line}: barrier skipped"));
            }
            "if" | "opaque" | "reset" => {
                return Err(QasmError::Unsupported { line, col, what: format!("`{word}`") });
            }
            _ => {
                let call = self.gate_call_header()?;
                self.top_level_call(call)?;
            }
        }
        Ok(())
    }

    fn expect_int(&mut self) -> Result<usize, QasmError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Int(_), .. }) => {
                let t = self.next().unwrap();
                let TokenKind::Int(v) = t.kind else { unreachable!() };
                Ok(v)
            }
            _ => self.syntax("expected an integer"),
        }
    }

    fn skip_statement(&mut self) {
        while let Some(t) = self.next() {
            if t.kind == TokenKind::Semicolon {
                break;
            }
        }
    }

    // gate name(p0, p1)? q0, q1 { body }
    fn gate_definition(&mut self) -> Result<(), QasmError> {
        let (name, line, col) = self.expect_ident("gate name")?;
        if builtin_kind(&name).is_some() || self.defs.contains_key(&name) {
            return Err(QasmError::Syntax {
                line,
                col,
                msg: format!("gate `{name}` is already defined"),
            });
        }
        let mut params = Vec::new();
        if matches!(self.peek(), Some(Token { kind: TokenKind::LParen, .. })) {
            self.pos += 1;
            if !matches!(self.peek(), Some(Token { kind: TokenKind::RParen, .. })) {
                loop {
                    params.push(self.expect_ident("parameter name")?.0);
                    if matches!(self.peek(), Some(Token { kind: TokenKind::Comma, .. })) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(&TokenKind::RParen, "`)`")?;
        }
        let mut qargs = Vec::new();
        loop {
            qargs.push(self.expect_ident("qubit argument name")?.0);
            if matches!(self.peek(), Some(Token { kind: TokenKind::Comma, .. })) {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(&TokenKind::LBrace, "`{`")?;

        let mut body = Vec::new();
        while !matches!(self.peek(), Some(Token { kind: TokenKind::RBrace, .. })) {
            if self.peek().is_none() {
                return self.syntax("unterminated gate body");
            }
            if self.eat_ident("barrier") {
                self.skip_statement();
                continue;
            }
            let call = self.gate_call_header()?;
            // Recursion guard: the name only becomes callable after its body
            // is complete, so a self-reference is the one way to recurse.
            if call.name == name {
                return Err(QasmError::RecursiveGate { line: call.line, col: call.col, name });
            }
            if builtin_kind(&call.name).is_none() && !self.defs.contains_key(&call.name) {
                return Err(QasmError::UnknownGate {
                    line: call.line,
                    col: call.col,
                    name: call.name,
                });
            }
            for expr in &call.params {
                expr.check_params(&params, (call.line, call.col))?;
            }
            let mut indices = Vec::new();
            for (arg, arg_line, arg_col) in &call.qargs {
                let Some(idx) = qargs.iter().position(|q| q == &arg.0) else {
                    return Err(QasmError::UnknownRegister {
                        line: *arg_line,
                        col: *arg_col,
                        name: arg.0.clone(),
                    });
                };
                if arg.1.is_some() {
                    return Err(QasmError::Syntax {
                        line: *arg_line,
                        col: *arg_col,
                        msg: "indexing is not allowed inside gate bodies".into(),
                    });
                }
                indices.push(idx);
            }
            body.push(BodyCall {
                name: call.name,
                line: call.line,
                col: call.col,
                params: call.params,
                qargs: indices,
            });
        }
        self.expect(&TokenKind::RBrace, "`}`")?;
        self.defs.insert(name, GateDef { params, qargs, body });
        Ok(())
    }

    fn gate_call_header(&mut self) -> Result<RawCall, QasmError> {
        let (name, line, col) = self.expect_ident("gate name")?;
        let mut params = Vec::new();
        if matches!(self.peek(), Some(Token { kind: TokenKind::LParen, .. })) {
            self.pos += 1;
            if !matches!(self.peek(), Some(Token { kind: TokenKind::RParen, .. })) {
                loop {
                    params.push(self.expr()?);
                    if matches!(self.peek(), Some(Token { kind: TokenKind::Comma, .. })) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(&TokenKind::RParen, "`)`")?;
        }
        let mut qargs = Vec::new();
        loop {
            let (reg, rline, rcol) = self.expect_ident("qubit argument")?;
            let index = if matches!(self.peek(), Some(Token { kind: TokenKind::LBracket, .. })) {
                self.pos += 1;
                let idx = self.expect_int()?;
                self.expect(&TokenKind::RBracket, "`]`")?;
                Some(idx)
            } else {
                None
            };
            qargs.push(((reg, index), rline, rcol));
            if matches!(self.peek(), Some(Token { kind: TokenKind::Comma, .. })) {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(&TokenKind::Semicolon, "`;` after gate application")?;
        Ok(RawCall { name, line, col, params, qargs })
    }

    // Precedence climbing: + − | * / | unary − | ^ (right) | primary.
    fn expr(&mut self) -> Result<Expr, QasmError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => '+',
                Some(TokenKind::Minus) => '-',
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, QasmError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => '*',
                Some(TokenKind::Slash) => '/',
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, QasmError> {
        if matches!(self.peek(), Some(Token { kind: TokenKind::Minus, .. })) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, QasmError> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Token { kind: TokenKind::Caret, .. })) {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, QasmError> {
        match self.peek().cloned() {
            Some(Token { kind: TokenKind::Int(v), .. }) => {
                self.pos += 1;
                Ok(Expr::Num(v as f64))
            }
            Some(Token { kind: TokenKind::Real(v), .. }) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Token { kind: TokenKind::LParen, .. }) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            Some(Token { kind: TokenKind::Ident(name), .. }) => {
                self.pos += 1;
                if name == "pi" {
                    return Ok(Expr::Pi);
                }
                if FUNCTIONS.contains(&name.as_str()) {
                    self.expect(&TokenKind::LParen, "`(` after function name")?;
                    let arg = self.expr()?;
                    self.expect(&TokenKind::RParen, "`)`")?;
                    return Ok(Expr::Func(name, Box::new(arg)));
                }
                Ok(Expr::Param(name))
            }
            _ => self.syntax("expected an angle expression"),
        }
    }

    /// Resolves one top-level call: evaluates angles, resolves registers,
    /// applies broadcasting, and expands it into concrete gates.
    fn top_level_call(&mut self, call: RawCall) -> Result<(), QasmError> {
        let env = HashMap::new();
        for p in &call.params {
            p.check_params(&[], (call.line, call.col))?;
            let _ = p; // evaluated below per broadcast arm
        }
        let angles: Vec<f64> = call.params.iter().map(|p| p.eval(&env)).collect();

        // Resolve operands: (base qubit index, register size or 1).
        struct Operand {
            base: usize,
            len: usize,
        }
        let mut operands = Vec::new();
        for ((reg, index), rline, rcol) in &call.qargs {
            let Some(qreg) = self.qregs.iter().find(|r| &r.name == reg) else {
                return Err(QasmError::UnknownRegister {
                    line: *rline,
                    col: *rcol,
                    name: reg.clone(),
                });
            };
            match index {
                Some(idx) => {
                    if *idx >= qreg.size {
                        return Err(QasmError::IndexOutOfRange {
                            line: *rline,
                            col: *rcol,
                            name: reg.clone(),
                            index: *idx,
                            size: qreg.size,
                        });
                    }
                    operands.push(Operand { base: qreg.offset + idx, len: 1 });
                }
                None => operands.push(Operand { base: qreg.offset, len: qreg.size }),
            }
        }

        // Broadcast: all whole-register operands must share one length.
        let mut span = 1usize;
        for op in &operands {
            if op.len > 1 {
                if span > 1 && op.len != span {
                    return Err(QasmError::Arity {
                        line: call.line,
                        col: call.col,
                        name: call.name.clone(),
                        msg: format!("mismatched register sizes {span} and {}", op.len),
                    });
                }
                span = op.len;
            }
        }
        for rep in 0..span {
            let qubits: Vec<usize> = operands
                .iter()
                .map(|op| if op.len > 1 { op.base + rep } else { op.base })
                .collect();
            self.expand_call(&call.name, call.line, call.col, &angles, &qubits, 0)?;
        }
        Ok(())
    }

    fn expand_call(
        &mut self,
        name: &str,
        line: usize,
        col: usize,
        angles: &[f64],
        qubits: &[usize],
        depth: usize,
    ) -> Result<(), QasmError> {
        if depth > 64 {
            return Err(QasmError::RecursiveGate { line, col, name: name.to_string() });
        }
        if let Some((kind, controls)) = builtin_kind(name) {
            let needed_qubits = kind.target_count() + controls;
            if qubits.len() != needed_qubits {
                return Err(QasmError::Arity {
                    line,
                    col,
                    name: name.to_string(),
                    msg: format!("expects {needed_qubits} qubit(s), got {}", qubits.len()),
                });
            }
            if angles.len() != kind.angle_count() {
                return Err(QasmError::Arity {
                    line,
                    col,
                    name: name.to_string(),
                    msg: format!("expects {} parameter(s), got {}", kind.angle_count(), angles.len()),
                });
            }
            let args: Vec<ParamExpr> = angles.iter().map(|&a| ParamExpr::lit(a)).collect();
            let (ctrl, targets) = match kind {
                GateKind::Swap => (vec![], qubits.to_vec()),
                _ => (qubits[..controls].to_vec(), qubits[controls..].to_vec()),
            };
            let gate = Gate::new(kind, targets, ctrl, args).map_err(|e| QasmError::Arity {
                line,
                col,
                name: name.to_string(),
                msg: e.to_string(),
            })?;
            self.gates.push(gate);
            return Ok(());
        }

        let Some(def) = self.defs.get(name) else {
            return Err(QasmError::UnknownGate { line, col, name: name.to_string() });
        };
        if def.params.len() != angles.len() {
            return Err(QasmError::Arity {
                line,
                col,
                name: name.to_string(),
                msg: format!("expects {} parameter(s), got {}", def.params.len(), angles.len()),
            });
        }
        if def.qargs.len() != qubits.len() {
            return Err(QasmError::Arity {
                line,
                col,
                name: name.to_string(),
                msg: format!("expects {} qubit(s), got {}", def.qargs.len(), qubits.len()),
            });
        }
        // (name, line, col, evaluated angles, resolved qubits)
        type ExpandedCall = (String, usize, usize, Vec<f64>, Vec<usize>);
        let env: HashMap<String, f64> =
            def.params.iter().cloned().zip(angles.iter().copied()).collect();
        let calls: Vec<ExpandedCall> = def
            .body
            .iter()
            .map(|bc| {
                (
                    bc.name.clone(),
                    bc.line,
                    bc.col,
                    bc.params.iter().map(|p| p.eval(&env)).collect(),
                    bc.qargs.iter().map(|&i| qubits[i]).collect(),
                )
            })
            .collect();
        for (cname, cline, ccol, cangles, cqubits) in calls {
            self.expand_call(&cname, cline, ccol, &cangles, &cqubits, depth + 1)?;
        }
        Ok(())
    }
}

struct RawCall {
    name: String,
    line: usize,
    col: usize,
    params: Vec<Expr>,
    qargs: Vec<((String, Option<usize>), usize, usize)>,
}

/// Built-in gate table: name → (kind, number of leading control operands).
fn builtin_kind(name: &str) -> Option<(GateKind, usize)> {
    Some(match name {
        "id" => (GateKind::I, 0),
        "x" => (GateKind::X, 0),
        "y" => (GateKind::Y, 0),
        "z" => (GateKind::Z, 0),
        "h" => (GateKind::H, 0),
        "s" => (GateKind::S, 0),
        "sdg" => (GateKind::Sdg, 0),
        "t" => (GateKind::T, 0),
        "tdg" => (GateKind::Tdg, 0),
        "rx" => (GateKind::Rx, 0),
        "ry" => (GateKind::Ry, 0),
        "rz" => (GateKind::Rz, 0),
        "u1" => (GateKind::U1, 0),
        "u2" => (GateKind::U2, 0),
        "u3" | "U" => (GateKind::U3, 0),
        "cx" | "CX" => (GateKind::Cx, 1),
        "cz" => (GateKind::Cz, 1),
        "ccx" => (GateKind::Ccx, 2),
        "swap" => (GateKind::Swap, 0),
        "cu1" => (GateKind::U1, 1),
        _ => return None,
    })
}

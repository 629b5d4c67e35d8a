//! Recursive-descent reader for the OpenQASM 2.0 subset used by benchmark
//! suites: register declarations, `qelib1.inc` gates, user `gate` macros,
//! `barrier` and `measure`. Classical control, `reset` and `opaque` are
//! reported as unsupported.

use std::collections::HashMap;

use super::lexer::{syntax, tokenize, Tok, Token};
use crate::circuit::{layerize, Circuit, Gate, QubitId};
use crate::error::{Error, Result};

/// Parameter and qubit counts of the `qelib1.inc` gates plus the `U`/`CX`
/// builtins.
const STANDARD_GATES: &[(&str, usize, usize)] = &[
    ("U", 3, 1),
    ("CX", 0, 2),
    ("u3", 3, 1),
    ("u2", 2, 1),
    ("u1", 1, 1),
    ("u0", 1, 1),
    ("u", 3, 1),
    ("p", 1, 1),
    ("id", 0, 1),
    ("x", 0, 1),
    ("y", 0, 1),
    ("z", 0, 1),
    ("h", 0, 1),
    ("s", 0, 1),
    ("sdg", 0, 1),
    ("t", 0, 1),
    ("tdg", 0, 1),
    ("sx", 0, 1),
    ("sxdg", 0, 1),
    ("rx", 1, 1),
    ("ry", 1, 1),
    ("rz", 1, 1),
    ("cx", 0, 2),
    ("cy", 0, 2),
    ("cz", 0, 2),
    ("ch", 0, 2),
    ("csx", 0, 2),
    ("swap", 0, 2),
    ("crx", 1, 2),
    ("cry", 1, 2),
    ("crz", 1, 2),
    ("cu1", 1, 2),
    ("cp", 1, 2),
    ("cu3", 3, 2),
    ("cu", 4, 2),
    ("rxx", 1, 2),
    ("rzz", 1, 2),
    ("ccx", 0, 3),
    ("cswap", 0, 3),
    ("rccx", 0, 3),
    ("rc3x", 0, 4),
    ("c3x", 0, 4),
    ("c3sqrtx", 0, 4),
    ("c4x", 0, 5),
];

pub(crate) fn standard_signature(name: &str) -> Option<(usize, usize)> {
    STANDARD_GATES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(_, p, q)| (p, q))
}

#[derive(Debug, Clone)]
enum Expr {
    Num(f64),
    Param(usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Box<Expr>),
}

impl Expr {
    fn eval(&self, env: &[f64]) -> f64 {
        match self {
            Expr::Num(x) => *x,
            Expr::Param(i) => env[*i],
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
            Expr::Call(f, e) => {
                let x = e.eval(env);
                match f.as_str() {
                    "sin" => x.sin(),
                    "cos" => x.cos(),
                    "tan" => x.tan(),
                    "exp" => x.exp(),
                    "ln" => x.ln(),
                    _ => x.sqrt(),
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct BodyOp {
    name: String,
    params: Vec<Expr>,
    // indices into the macro's qubit argument list
    qubits: Vec<usize>,
}

#[derive(Debug, Clone)]
struct GateMacro {
    num_params: usize,
    num_qubits: usize,
    body: Vec<BodyOp>,
}

#[derive(Debug, Clone, Copy)]
struct Register {
    start: usize,
    size: usize,
}

#[derive(Debug, Clone, Copy)]
enum Operand {
    Single(usize),
    Whole(Register),
}

/// Parsed program: declarations plus the flattened gate list in program
/// order. Quantum registers share one dense index space in declaration
/// order.
#[derive(Debug, Clone, Default)]
pub struct QasmProgram {
    pub qregs: Vec<(String, usize)>,
    pub cregs: Vec<(String, usize)>,
    pub gates: Vec<Gate>,
}

impl QasmProgram {
    pub fn num_qubits(&self) -> usize {
        self.qregs.iter().map(|(_, n)| n).sum()
    }

    pub fn into_circuit(self, name: impl Into<String>) -> Result<Circuit> {
        let n = self.num_qubits();
        Ok(layerize(self.gates, n)?.with_name(name))
    }
}

/// Parses OpenQASM 2.0 source into a layered circuit.
pub fn parse_qasm(source: &str) -> Result<Circuit> {
    parse_program(source)?.into_circuit("")
}

pub fn parse_program(source: &str) -> Result<QasmProgram> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        qregs: HashMap::new(),
        cregs: HashMap::new(),
        macros: HashMap::new(),
        program: QasmProgram::default(),
    };
    parser.program_body()?;
    Ok(parser.program)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    qregs: HashMap<String, Register>,
    cregs: HashMap<String, usize>,
    macros: HashMap<String, GateMacro>,
    program: QasmProgram,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, token: &Token, message: &str) -> Error {
        syntax(token.line, token.column, message)
    }

    fn expect(&mut self, want: Tok) -> Result<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            let msg = format!("expected {}, found {}", want.describe(), t.tok.describe());
            Err(self.error_at(&t, &msg))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => {
                let msg = format!("expected identifier, found {}", other.describe());
                Err(self.error_at(&t, &msg))
            }
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => usize::try_from(v).map_err(|_| self.error_at(&t, "integer too large")),
            ref other => {
                let msg = format!("expected integer, found {}", other.describe());
                Err(self.error_at(&t, &msg))
            }
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if &self.peek().tok == want {
            self.next();
            true
        } else {
            false
        }
    }

    fn program_body(&mut self) -> Result<()> {
        self.header()?;
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Eof => return Ok(()),
                Tok::Ident(word) => match word.as_str() {
                    "include" => self.include()?,
                    "qreg" => self.register(true)?,
                    "creg" => self.register(false)?,
                    "gate" => self.gate_definition()?,
                    "barrier" => {
                        self.next();
                        self.operand_list()?;
                        self.expect(Tok::Semi)?;
                    }
                    "measure" => self.measure()?,
                    "opaque" | "if" | "reset" => {
                        return Err(Error::Unsupported {
                            feature: word.clone(),
                            line: t.line,
                            column: t.column,
                        })
                    }
                    "OPENQASM" => return Err(self.error_at(&t, "duplicate OPENQASM header")),
                    _ => self.application()?,
                },
                other => {
                    let msg = format!("expected a statement, found {}", other.describe());
                    return Err(self.error_at(&t, &msg));
                }
            }
        }
    }

    fn header(&mut self) -> Result<()> {
        let t = self.next();
        if t.tok != Tok::Ident("OPENQASM".into()) {
            return Err(self.error_at(&t, "program must start with `OPENQASM 2.0;`"));
        }
        let v = self.next();
        let major = match v.tok {
            Tok::Real(x) => x.trunc() as i64,
            Tok::Int(x) => x as i64,
            _ => return Err(self.error_at(&v, "expected a version number")),
        };
        if major != 2 {
            return Err(Error::Unsupported {
                feature: format!("OpenQASM version {major}"),
                line: v.line,
                column: v.column,
            });
        }
        self.expect(Tok::Semi)?;
        Ok(())
    }

    fn include(&mut self) -> Result<()> {
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Str(path) if path == "qelib1.inc" => {}
            Tok::Str(path) => {
                return Err(Error::Unsupported {
                    feature: format!("include \"{path}\""),
                    line: t.line,
                    column: t.column,
                })
            }
            other => {
                let msg = format!("expected a file name, found {}", other.describe());
                return Err(self.error_at(&t, &msg));
            }
        }
        self.expect(Tok::Semi)?;
        Ok(())
    }

    fn register(&mut self, quantum: bool) -> Result<()> {
        self.next();
        let (name, at) = self.ident()?;
        self.expect(Tok::LBracket)?;
        let size = self.integer()?;
        self.expect(Tok::RBracket)?;
        self.expect(Tok::Semi)?;
        if size == 0 {
            return Err(self.error_at(&at, "register size must be positive"));
        }
        if self.qregs.contains_key(&name) || self.cregs.contains_key(&name) {
            return Err(self.error_at(&at, &format!("register `{name}` already declared")));
        }
        if quantum {
            let start = self.program.num_qubits();
            self.qregs.insert(name.clone(), Register { start, size });
            self.program.qregs.push((name, size));
        } else {
            self.cregs.insert(name.clone(), size);
            self.program.cregs.push((name, size));
        }
        Ok(())
    }

    fn gate_definition(&mut self) -> Result<()> {
        self.next();
        let (name, at) = self.ident()?;
        if self.macros.contains_key(&name) || standard_signature(&name).is_some() {
            return Err(self.error_at(&at, &format!("gate `{name}` already defined")));
        }
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
            loop {
                params.push(self.ident()?.0);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        let mut qargs = Vec::new();
        loop {
            qargs.push(self.ident()?.0);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::LBrace)?;
        let mut body = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let (op, op_at) = self.ident()?;
            if op == "barrier" {
                while !self.eat(&Tok::Semi) {
                    if self.peek().tok == Tok::Eof {
                        return Err(self.error_at(&op_at, "unterminated barrier"));
                    }
                    self.next();
                }
                continue;
            }
            let (num_params, num_qubits) = self.signature(&op, &op_at)?;
            let mut exprs = Vec::new();
            if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
                loop {
                    exprs.push(self.expr(&params)?);
                    if self.eat(&Tok::RParen) {
                        break;
                    }
                    self.expect(Tok::Comma)?;
                }
            }
            let mut qubits = Vec::new();
            loop {
                let (arg, arg_at) = self.ident()?;
                let idx = qargs.iter().position(|q| *q == arg).ok_or_else(|| {
                    self.error_at(&arg_at, &format!("unknown gate argument `{arg}`"))
                })?;
                qubits.push(idx);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::Semi)?;
            if exprs.len() != num_params || qubits.len() != num_qubits {
                return Err(self.error_at(
                    &op_at,
                    &format!("`{op}` takes {num_params} parameters and {num_qubits} qubits"),
                ));
            }
            body.push(BodyOp {
                name: op,
                params: exprs,
                qubits,
            });
        }
        self.macros.insert(
            name,
            GateMacro {
                num_params: params.len(),
                num_qubits: qargs.len(),
                body,
            },
        );
        Ok(())
    }

    fn signature(&self, name: &str, at: &Token) -> Result<(usize, usize)> {
        if let Some(m) = self.macros.get(name) {
            return Ok((m.num_params, m.num_qubits));
        }
        standard_signature(name).ok_or_else(|| self.error_at(at, &format!("unknown gate `{name}`")))
    }

    fn measure(&mut self) -> Result<()> {
        let at = self.next();
        let q = self.operand()?;
        self.expect(Tok::Arrow)?;
        let (creg, c_at) = self.ident()?;
        let size = *self
            .cregs
            .get(&creg)
            .ok_or_else(|| self.error_at(&c_at, &format!("unknown classical register `{creg}`")))?;
        let c_size = if self.eat(&Tok::LBracket) {
            let idx = self.integer()?;
            self.expect(Tok::RBracket)?;
            if idx >= size {
                return Err(out_of_bounds(&creg, idx, size));
            }
            1
        } else {
            size
        };
        self.expect(Tok::Semi)?;
        let q_size = match q {
            Operand::Single(_) => 1,
            Operand::Whole(r) => r.size,
        };
        if q_size != c_size {
            return Err(self.error_at(&at, "measure operands differ in size"));
        }
        Ok(())
    }

    fn operand(&mut self) -> Result<Operand> {
        let (name, at) = self.ident()?;
        let reg = *self
            .qregs
            .get(&name)
            .ok_or_else(|| self.error_at(&at, &format!("unknown quantum register `{name}`")))?;
        if self.eat(&Tok::LBracket) {
            let idx = self.integer()?;
            self.expect(Tok::RBracket)?;
            if idx >= reg.size {
                return Err(out_of_bounds(&name, idx, reg.size));
            }
            Ok(Operand::Single(reg.start + idx))
        } else {
            Ok(Operand::Whole(reg))
        }
    }

    fn operand_list(&mut self) -> Result<Vec<Operand>> {
        let mut ops = vec![self.operand()?];
        while self.eat(&Tok::Comma) {
            ops.push(self.operand()?);
        }
        Ok(ops)
    }

    fn application(&mut self) -> Result<()> {
        let (name, at) = self.ident()?;
        let (num_params, num_qubits) = self.signature(&name, &at)?;
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
            loop {
                params.push(self.expr(&[])?.eval(&[]));
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        let operands = self.operand_list()?;
        self.expect(Tok::Semi)?;
        if params.len() != num_params || operands.len() != num_qubits {
            return Err(self.error_at(
                &at,
                &format!("`{name}` takes {num_params} parameters and {num_qubits} qubits"),
            ));
        }

        // register broadcast: whole-register operands must agree in size
        let width = operands
            .iter()
            .filter_map(|o| match o {
                Operand::Whole(r) => Some(r.size),
                Operand::Single(_) => None,
            })
            .try_fold(None, |acc: Option<usize>, size| match acc {
                Some(w) if w != size => Err(()),
                _ => Ok(Some(size)),
            })
            .map_err(|_| self.error_at(&at, "register operands differ in size"))?;
        for i in 0..width.unwrap_or(1) {
            let qubits: Vec<usize> = operands
                .iter()
                .map(|o| match o {
                    Operand::Single(q) => *q,
                    Operand::Whole(r) => r.start + i,
                })
                .collect();
            self.emit(&name, &params, &qubits, &at)?;
        }
        Ok(())
    }

    fn emit(&mut self, name: &str, params: &[f64], qubits: &[usize], at: &Token) -> Result<()> {
        if let Some(m) = self.macros.get(name).cloned() {
            for op in &m.body {
                let p: Vec<f64> = op.params.iter().map(|e| e.eval(params)).collect();
                let q: Vec<usize> = op.qubits.iter().map(|&i| qubits[i]).collect();
                self.emit(&op.name, &p, &q, at)?;
            }
            return Ok(());
        }
        let gate = Gate::new(
            name.to_ascii_lowercase(),
            qubits.iter().map(|&q| QubitId(q)),
            params.to_vec(),
        )
        .map_err(|e| self.error_at(at, &e.to_string()))?;
        self.program.gates.push(gate);
        Ok(())
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self, params: &[String]) -> Result<Expr> {
        let mut lhs = self.term(params)?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => '+',
                Tok::Minus => '-',
                _ => return Ok(lhs),
            };
            self.next();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term(params)?));
        }
    }

    fn term(&mut self, params: &[String]) -> Result<Expr> {
        let mut lhs = self.unary(params)?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => '*',
                Tok::Slash => '/',
                _ => return Ok(lhs),
            };
            self.next();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary(params)?));
        }
    }

    fn unary(&mut self, params: &[String]) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary(params)?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary(params);
        }
        let base = self.atom(params)?;
        if self.eat(&Tok::Caret) {
            // right associative
            let exp = self.unary(params)?;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self, params: &[String]) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Real(x) => Ok(Expr::Num(*x)),
            Tok::Int(x) => Ok(Expr::Num(*x as f64)),
            Tok::LParen => {
                let e = self.expr(params)?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if name == "pi" => Ok(Expr::Num(std::f64::consts::PI)),
            Tok::Ident(name)
                if matches!(name.as_str(), "sin" | "cos" | "tan" | "exp" | "ln" | "sqrt") =>
            {
                self.expect(Tok::LParen)?;
                let e = self.expr(params)?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Call(name.clone(), Box::new(e)))
            }
            Tok::Ident(name) => match params.iter().position(|p| p == name) {
                Some(i) => Ok(Expr::Param(i)),
                None => Err(self.error_at(&t, &format!("unknown parameter `{name}`"))),
            },
            other => {
                let msg = format!("expected an expression, found {}", other.describe());
                Err(self.error_at(&t, &msg))
            }
        }
    }
}

fn out_of_bounds(register: &str, index: usize, size: usize) -> Error {
    Error::Malformed(format!(
        "index {index} out of bounds for register `{register}` of size {size}"
    ))
}

//! Commands, environments and values, with binding operations and text I/O.

use std::collections::BTreeSet;
use std::fmt;

use ocbv_term::{fresh, Lexer, Name, ParseError};

/// Values: variables and abstractions over commands.
#[derive(Debug, Clone)]
pub enum SeqValue {
    SVar(Name),
    SAbs(Name, Box<Command>),
}

/// Environments: the output marker ε, a μ̃-binder, or a value pushed on an
/// environment.
#[derive(Debug, Clone)]
pub enum Environment {
    Eps,
    MuTilde(Name, Box<Command>),
    Stack(SeqValue, Box<Environment>),
}

/// A command `<v | e>`.
#[derive(Debug, Clone)]
pub struct Command {
    pub value: SeqValue,
    pub env: Environment,
}

impl SeqValue {
    pub fn var(x: &str) -> SeqValue {
        SeqValue::SVar(Name::from(x))
    }

    pub fn abs(x: &str, c: Command) -> SeqValue {
        SeqValue::SAbs(Name::from(x), Box::new(c))
    }

    pub fn size(&self) -> usize {
        match self {
            SeqValue::SVar(_) => 1,
            SeqValue::SAbs(_, c) => 1 + c.size(),
        }
    }
}

impl Environment {
    pub fn mu(x: &str, c: Command) -> Environment {
        Environment::MuTilde(Name::from(x), Box::new(c))
    }

    pub fn stack(v: SeqValue, e: Environment) -> Environment {
        Environment::Stack(v, Box::new(e))
    }

    pub fn size(&self) -> usize {
        match self {
            Environment::Eps => 1,
            Environment::MuTilde(_, c) => 1 + c.size(),
            Environment::Stack(v, e) => 1 + v.size() + e.size(),
        }
    }
}

impl Command {
    pub fn new(value: SeqValue, env: Environment) -> Command {
        Command { value, env }
    }

    /// Node count, with the command node itself counting one.
    pub fn size(&self) -> usize {
        1 + self.value.size() + self.env.size()
    }

    /// Number of nodes of each kind, in the order command,
    /// variable, abstraction, ε, μ̃, stack cell.
    pub fn constructor_counts(&self) -> [usize; 6] {
        let mut out = [0; 6];
        count_cmd(self, &mut out);
        out
    }
}

fn count_cmd(c: &Command, out: &mut [usize; 6]) {
    out[0] += 1;
    count_val(&c.value, out);
    count_env(&c.env, out);
}

fn count_val(v: &SeqValue, out: &mut [usize; 6]) {
    match v {
        SeqValue::SVar(_) => out[1] += 1,
        SeqValue::SAbs(_, c) => {
            out[2] += 1;
            count_cmd(c, out);
        }
    }
}

fn count_env(e: &Environment, out: &mut [usize; 6]) {
    match e {
        Environment::Eps => out[3] += 1,
        Environment::MuTilde(_, c) => {
            out[4] += 1;
            count_cmd(c, out);
        }
        Environment::Stack(v, e) => {
            out[5] += 1;
            count_val(v, out);
            count_env(e, out);
        }
    }
}

/// Number of ε occurrences that are not inside an abstraction.
pub fn output_count(c: &Command) -> usize {
    fn env(e: &Environment) -> usize {
        match e {
            Environment::Eps => 1,
            Environment::MuTilde(_, c) => output_count(c),
            Environment::Stack(_, e) => env(e),
        }
    }
    env(&c.env)
}

/// Checks the single-output invariant on `c` and on every command body of
/// an abstraction inside it.
pub fn validate(c: &Command) -> bool {
    fn val(v: &SeqValue) -> bool {
        match v {
            SeqValue::SVar(_) => true,
            SeqValue::SAbs(_, c) => validate(c),
        }
    }
    fn env(e: &Environment) -> bool {
        match e {
            Environment::Eps => true,
            Environment::MuTilde(_, c) => inner(c),
            Environment::Stack(v, e) => val(v) && env(e),
        }
    }
    fn inner(c: &Command) -> bool {
        val(&c.value) && env(&c.env)
    }
    output_count(c) == 1 && inner(c)
}

// Free variables.

pub fn fv_cmd(c: &Command) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    fv_c(c, &mut bound, &mut out);
    out
}

pub fn fv_env(e: &Environment) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    fv_e(e, &mut bound, &mut out);
    out
}

pub fn fv_value(v: &SeqValue) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    fv_v(v, &mut bound, &mut out);
    out
}

fn fv_c<'a>(c: &'a Command, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
    fv_v(&c.value, bound, out);
    fv_e(&c.env, bound, out);
}

fn fv_v<'a>(v: &'a SeqValue, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
    match v {
        SeqValue::SVar(x) => {
            if !bound.iter().any(|b| *b == &**x) {
                out.insert(x.clone());
            }
        }
        SeqValue::SAbs(x, c) => {
            bound.push(x);
            fv_c(c, bound, out);
            bound.pop();
        }
    }
}

fn fv_e<'a>(e: &'a Environment, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
    match e {
        Environment::Eps => {}
        Environment::MuTilde(x, c) => {
            bound.push(x);
            fv_c(c, bound, out);
            bound.pop();
        }
        Environment::Stack(v, e) => {
            fv_v(v, bound, out);
            fv_e(e, bound, out);
        }
    }
}

pub fn occurs_free_cmd(c: &Command, x: &str) -> bool {
    occurs_v(&c.value, x) || occurs_e(&c.env, x)
}

fn occurs_v(v: &SeqValue, x: &str) -> bool {
    match v {
        SeqValue::SVar(y) => &**y == x,
        SeqValue::SAbs(y, c) => &**y != x && occurs_free_cmd(c, x),
    }
}

pub fn occurs_free_env(e: &Environment, x: &str) -> bool {
    occurs_e(e, x)
}

pub fn occurs_free_value(v: &SeqValue, x: &str) -> bool {
    occurs_v(v, x)
}

fn occurs_e(e: &Environment, x: &str) -> bool {
    match e {
        Environment::Eps => false,
        Environment::MuTilde(y, c) => &**y != x && occurs_free_cmd(c, x),
        Environment::Stack(v, e) => occurs_v(v, x) || occurs_e(e, x),
    }
}

// Substitution of a value for a variable.

/// Capture-avoiding substitution `c{x:=v}`.
pub fn subst_cmd(c: &Command, x: &str, v: &SeqValue) -> Command {
    let fvv = fv_value(v);
    s_cmd(c, x, v, &fvv)
}

/// Renames the free occurrences of `x` in `c` to the fresh name `y`.
pub fn rename_cmd(c: &Command, x: &str, y: &Name) -> Command {
    let mut fvv = BTreeSet::new();
    fvv.insert(y.clone());
    s_cmd(c, x, &SeqValue::SVar(y.clone()), &fvv)
}

fn s_cmd(c: &Command, x: &str, v: &SeqValue, fvv: &BTreeSet<Name>) -> Command {
    Command { value: s_val(&c.value, x, v, fvv), env: s_env(&c.env, x, v, fvv) }
}

fn s_val(w: &SeqValue, x: &str, v: &SeqValue, fvv: &BTreeSet<Name>) -> SeqValue {
    match w {
        SeqValue::SVar(y) => {
            if &**y == x {
                v.clone()
            } else {
                w.clone()
            }
        }
        SeqValue::SAbs(y, c) => {
            let (y, c) = s_binder(y, c, x, v, fvv);
            SeqValue::SAbs(y, Box::new(c))
        }
    }
}

fn s_env(e: &Environment, x: &str, v: &SeqValue, fvv: &BTreeSet<Name>) -> Environment {
    match e {
        Environment::Eps => Environment::Eps,
        Environment::MuTilde(y, c) => {
            let (y, c) = s_binder(y, c, x, v, fvv);
            Environment::MuTilde(y, Box::new(c))
        }
        Environment::Stack(w, e) => Environment::Stack(s_val(w, x, v, fvv), Box::new(s_env(e, x, v, fvv))),
    }
}

fn s_binder(y: &Name, c: &Command, x: &str, v: &SeqValue, fvv: &BTreeSet<Name>) -> (Name, Command) {
    if &**y == x || !occurs_free_cmd(c, x) {
        return (y.clone(), c.clone());
    }
    if fvv.contains(y) {
        let y2 = fresh(y);
        let c2 = rename_cmd(c, y, &y2);
        let c3 = s_cmd(&c2, x, v, fvv);
        (y2, c3)
    } else {
        (y.clone(), s_cmd(c, x, v, fvv))
    }
}

// Append.

/// `c @ e`: substitutes `e` for the output ε of `c`, renaming μ̃-binders of
/// `c` that would capture free variables of `e`.
pub fn append_cmd(c: &Command, e: &Environment) -> Command {
    let fve = fv_env(e);
    app_cmd(c, e, &fve)
}

/// `e0 @ e`.
pub fn append_env(e0: &Environment, e: &Environment) -> Environment {
    let fve = fv_env(e);
    app_env(e0, e, &fve)
}

fn app_cmd(c: &Command, e: &Environment, fve: &BTreeSet<Name>) -> Command {
    Command { value: c.value.clone(), env: app_env(&c.env, e, fve) }
}

fn app_env(e0: &Environment, e: &Environment, fve: &BTreeSet<Name>) -> Environment {
    match e0 {
        Environment::Eps => e.clone(),
        Environment::Stack(v, rest) => Environment::Stack(v.clone(), Box::new(app_env(rest, e, fve))),
        Environment::MuTilde(x, c) => {
            if fve.contains(x) {
                let y = fresh(x);
                let c2 = rename_cmd(c, x, &y);
                Environment::MuTilde(y, Box::new(app_cmd(&c2, e, fve)))
            } else {
                Environment::MuTilde(x.clone(), Box::new(app_cmd(c, e, fve)))
            }
        }
    }
}

// Alpha-equivalence.

/// A string equal for two commands iff they are alpha-equivalent.
pub fn cmd_key(c: &Command) -> String {
    let mut out = String::new();
    let mut scope = Vec::new();
    k_cmd(c, &mut scope, &mut out);
    out
}

pub fn cmd_alpha_eq(a: &Command, b: &Command) -> bool {
    cmd_key(a) == cmd_key(b)
}

fn k_cmd<'a>(c: &'a Command, scope: &mut Vec<&'a str>, out: &mut String) {
    out.push('<');
    k_val(&c.value, scope, out);
    out.push('|');
    k_env(&c.env, scope, out);
    out.push('>');
}

fn k_val<'a>(v: &'a SeqValue, scope: &mut Vec<&'a str>, out: &mut String) {
    use std::fmt::Write;
    match v {
        SeqValue::SVar(x) => match scope.iter().rposition(|b| *b == &**x) {
            Some(level) => {
                let _ = write!(out, "%{level}");
            }
            None => {
                out.push('$');
                out.push_str(x);
            }
        },
        SeqValue::SAbs(x, c) => {
            out.push('\\');
            scope.push(x);
            k_cmd(c, scope, out);
            scope.pop();
        }
    }
}

fn k_env<'a>(e: &'a Environment, scope: &mut Vec<&'a str>, out: &mut String) {
    match e {
        Environment::Eps => out.push('#'),
        Environment::MuTilde(x, c) => {
            out.push('~');
            scope.push(x);
            k_cmd(c, scope, out);
            scope.pop();
        }
        Environment::Stack(v, e) => {
            k_val(v, scope, out);
            out.push('.');
            k_env(e, scope, out);
        }
    }
}

// Text I/O.

/// Parses a command:
///
/// ```text
/// command := "<" svalue "|" env ">"
/// svalue  := var | "\" var "." command
/// env     := "#" | "mu~" var "." command | svalue "." env
/// ```
pub fn parse_command(text: &str) -> Result<Command, ParseError> {
    let mut lx = Lexer::new(text);
    let c = p_cmd(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.error(&["end of input"]));
    }
    Ok(c)
}

fn p_cmd(lx: &mut Lexer) -> Result<Command, ParseError> {
    lx.enter()?;
    lx.expect("<")?;
    let value = p_val(lx)?;
    lx.expect("|")?;
    let env = p_env(lx)?;
    lx.expect(">")?;
    lx.leave();
    Ok(Command { value, env })
}

fn p_val(lx: &mut Lexer) -> Result<SeqValue, ParseError> {
    if lx.eat("\\") {
        let x = lx.expect_ident()?;
        lx.expect(".")?;
        let c = p_cmd(lx)?;
        Ok(SeqValue::abs(x, c))
    } else if let Some(x) = lx.ident() {
        Ok(SeqValue::var(x))
    } else {
        Err(lx.error(&["identifier", "'\\'"]))
    }
}

fn p_env(lx: &mut Lexer) -> Result<Environment, ParseError> {
    if lx.eat("#") {
        return Ok(Environment::Eps);
    }
    if lx.eat("mu~") {
        let x = lx.expect_ident()?;
        lx.expect(".")?;
        let c = p_cmd(lx)?;
        return Ok(Environment::mu(x, c));
    }
    if lx.peek_ident_start() || lx.peek_str("\\") {
        lx.enter()?;
        let v = p_val(lx)?;
        lx.expect(".")?;
        let e = p_env(lx)?;
        lx.leave();
        return Ok(Environment::stack(v, e));
    }
    Err(lx.error(&["'#'", "'mu~'", "identifier", "'\\'"]))
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | {}>", self.value, self.env)
    }
}

impl fmt::Display for SeqValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqValue::SVar(x) => f.write_str(x),
            SeqValue::SAbs(x, c) => write!(f, "\\{x}.{c}"),
        }
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Environment::Eps => f.write_str("#"),
            Environment::MuTilde(x, c) => write!(f, "mu~{x}.{c}"),
            Environment::Stack(v, e) => write!(f, "{v} . {e}"),
        }
    }
}

/// Prints a command in the syntax accepted by [`parse_command`].
pub fn print_command(c: &Command) -> String {
    c.to_string()
}

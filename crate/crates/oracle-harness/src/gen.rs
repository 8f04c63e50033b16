//! Seeded random generation of terms and commands of bounded size.

use ocbv_sequent::{Command, Environment, SeqValue};
use ocbv_term::{Name, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// The syntactic class a generator draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Language {
    /// Plain λ-terms.
    Pure,
    /// λ-terms with explicit substitutions.
    WithEs,
    /// The kernel: every application argument is a value.
    Vsubk,
    /// Sequent commands.
    Sequent,
}

impl std::str::FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pure" => Ok(Language::Pure),
            "es" => Ok(Language::WithEs),
            "vsubk" => Ok(Language::Vsubk),
            "seq" => Ok(Language::Sequent),
            _ => Err(format!("unknown language '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GenError {
    #[error("max_size must be at least 1")]
    ZeroSize,
    #[error("abstraction_bias {0} is not in [0, 1]")]
    Bias(f64),
    #[error("the free variable pool is empty")]
    EmptyPool,
}

/// Generator settings. Generation is a pure function of the configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    /// Upper bound on the node count. The size is drawn uniformly from
    /// `1..=max_size` (from the feasible sizes for commands).
    pub max_size: usize,
    pub free_var_pool: Vec<String>,
    pub language: Language,
    /// Probability of choosing an abstraction over the other compound
    /// constructors.
    pub abstraction_bias: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_size: 25,
            free_var_pool: vec!["a".into(), "b".into(), "c".into()],
            language: Language::Pure,
            abstraction_bias: 0.35,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.max_size == 0 {
            return Err(GenError::ZeroSize);
        }
        if !(0.0..=1.0).contains(&self.abstraction_bias) {
            return Err(GenError::Bias(self.abstraction_bias));
        }
        if self.free_var_pool.is_empty() {
            return Err(GenError::EmptyPool);
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenConfig { seed, ..self.clone() }
    }

    pub fn with_language(&self, language: Language) -> Self {
        GenConfig { language, ..self.clone() }
    }

    pub fn with_max_size(&self, max_size: usize) -> Self {
        GenConfig { max_size, ..self.clone() }
    }
}

/// The seed of trial `i` of a run seeded with `base`. Trial 0 uses `base`
/// itself, so a failing trial is reproduced by a one-trial run at its seed.
pub fn trial_seed(base: u64, i: u64) -> u64 {
    base.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

const BINDERS: [&str; 4] = ["x", "y", "z", "w"];

struct Gen<'a> {
    rng: ChaCha8Rng,
    cfg: &'a GenConfig,
    scope: Vec<Name>,
}

impl Gen<'_> {
    fn var(&mut self) -> Name {
        let pool = self.cfg.free_var_pool.len();
        let i = self.rng.gen_range(0..pool + self.scope.len());
        if i < pool {
            Name::from(self.cfg.free_var_pool[i].as_str())
        } else {
            self.scope[i - pool].clone()
        }
    }

    fn binder(&mut self) -> Name {
        Name::from(BINDERS[self.rng.gen_range(0..BINDERS.len())])
    }

    fn under<T>(&mut self, x: &Name, f: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.push(x.clone());
        let out = f(self);
        self.scope.pop();
        out
    }

    fn term(&mut self, n: usize) -> Term {
        match n {
            0 => unreachable!("sizes are at least 1"),
            1 => Term::Var(self.var()),
            2 => self.abs(n),
            _ if self.rng.gen_bool(self.cfg.abstraction_bias) => self.abs(n),
            _ => {
                let es_share = match self.cfg.language {
                    Language::WithEs => 0.5,
                    Language::Vsubk => 0.3,
                    Language::Pure | Language::Sequent => 0.0,
                };
                if self.rng.gen_bool(es_share) {
                    self.es(n)
                } else {
                    self.app(n)
                }
            }
        }
    }

    fn abs(&mut self, n: usize) -> Term {
        let x = self.binder();
        let body = self.under(&x, |g| g.term(n - 1));
        Term::Abs(x, Box::new(body))
    }

    fn app(&mut self, n: usize) -> Term {
        let k = self.rng.gen_range(1..n - 1);
        let arg = if self.cfg.language == Language::Vsubk {
            if k == 1 {
                Term::Var(self.var())
            } else {
                self.abs(k)
            }
        } else {
            self.term(k)
        };
        let fun = self.term(n - 1 - k);
        Term::App(Box::new(fun), Box::new(arg))
    }

    fn es(&mut self, n: usize) -> Term {
        let k = self.rng.gen_range(1..n - 1);
        let x = self.binder();
        let def = self.term(k);
        let body = self.under(&x, |g| g.term(n - 1 - k));
        Term::Es(Box::new(body), x, Box::new(def))
    }

    fn command(&mut self, n: usize) -> Command {
        let splits: Vec<usize> = (1..n.saturating_sub(1)).filter(|&k| value_ok(k) && env_ok(n - 1 - k)).collect();
        let k = splits[self.rng.gen_range(0..splits.len())];
        let value = self.value(k);
        let env = self.env(n - 1 - k);
        Command::new(value, env)
    }

    fn value(&mut self, n: usize) -> SeqValue {
        if n == 1 {
            return SeqValue::SVar(self.var());
        }
        let x = self.binder();
        let body = self.under(&x, |g| g.command(n - 1));
        SeqValue::SAbs(x, Box::new(body))
    }

    fn env(&mut self, n: usize) -> Environment {
        if n == 1 {
            return Environment::Eps;
        }
        let stack: Vec<usize> = (1..n - 1).filter(|&k| value_ok(k) && env_ok(n - 1 - k)).collect();
        let mu = cmd_ok(n - 1);
        if mu && (stack.is_empty() || self.rng.gen_bool(0.5)) {
            let x = self.binder();
            let c = self.under(&x, |g| g.command(n - 1));
            return Environment::MuTilde(x, Box::new(c));
        }
        let k = stack[self.rng.gen_range(0..stack.len())];
        let v = self.value(k);
        let e = self.env(n - 1 - k);
        Environment::Stack(v, Box::new(e))
    }
}

/// Command sizes are 3 and every size from 5 on.
pub(crate) fn cmd_ok(n: usize) -> bool {
    n == 3 || n >= 5
}

fn value_ok(n: usize) -> bool {
    n == 1 || n > 1 && cmd_ok(n - 1)
}

fn env_ok(n: usize) -> bool {
    n == 1 || n >= 3
}

fn new_gen(cfg: &GenConfig) -> Gen<'_> {
    Gen { rng: ChaCha8Rng::seed_from_u64(cfg.seed), cfg, scope: Vec::new() }
}

/// Draws a term of the configured language. [`Language::Sequent`] is
/// treated as [`Language::Vsubk`], the language it is translated from.
pub fn gen_term(cfg: &GenConfig) -> Term {
    let cfg = if cfg.language == Language::Sequent { cfg.with_language(Language::Vsubk) } else { cfg.clone() };
    let mut g = new_gen(&cfg);
    let n = g.rng.gen_range(1..=cfg.max_size.max(1));
    g.term(n)
}

/// Draws a well-formed command whose size is uniform among the feasible
/// sizes up to `max_size` (at least 3).
pub fn gen_command(cfg: &GenConfig) -> Command {
    let mut g = new_gen(cfg);
    let sizes: Vec<usize> = (3..=cfg.max_size.max(3)).filter(|&n| cmd_ok(n)).collect();
    let n = sizes[g.rng.gen_range(0..sizes.len())];
    g.command(n)
}

//! Calculi, rule labels, redex sites and step counters.

use std::fmt;
use std::str::FromStr;

use ocbv_term::Path;

/// The term calculi handled by the engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Calculus {
    /// Naive Open CBV: β restricted to abstraction and variable arguments.
    Plot,
    /// The fireball calculus.
    Fire,
    /// The value substitution calculus, with rules at a distance.
    Vsub,
    /// The kernel of `Vsub`: application arguments are values.
    Vsubk,
    /// The shuffling calculus, with balanced contexts.
    Shuf,
}

impl Calculus {
    pub const ALL: [Calculus; 5] = [Calculus::Plot, Calculus::Fire, Calculus::Vsub, Calculus::Vsubk, Calculus::Shuf];

    pub fn name(self) -> &'static str {
        match self {
            Calculus::Plot => "plot",
            Calculus::Fire => "fire",
            Calculus::Vsub => "vsub",
            Calculus::Vsubk => "vsubk",
            Calculus::Shuf => "shuf",
        }
    }

    /// The rules of the calculus, in counter order.
    pub fn rules(self) -> &'static [Rule] {
        match self {
            Calculus::Plot => &[Rule::BetaAbs, Rule::BetaVar],
            Calculus::Fire => &[Rule::BetaAbs, Rule::BetaInert],
            Calculus::Vsub | Calculus::Vsubk => &[Rule::Mult, Rule::ExpAbs, Rule::ExpVar],
            Calculus::Shuf => &[Rule::BetaShuf, Rule::SigmaL, Rule::SigmaR],
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Calculus::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown calculus '{s}'"))
    }
}

/// Rewriting rules of all term calculi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `(λx.t)(λy.u) → t{x:=λy.u}` in `Plot` and `Fire`.
    BetaAbs,
    /// `(λx.t)y → t{x:=y}` in `Plot`.
    BetaVar,
    /// `(λx.t)i → t{x:=i}` for an inert `i`, in `Fire`.
    BetaInert,
    /// `L<λx.t>u → L<t[x:=u]>`.
    Mult,
    /// `t[x:=L<λy.u>] → L<t{x:=λy.u}>`.
    ExpAbs,
    /// `t[x:=L<y>] → L<t{x:=y}>`.
    ExpVar,
    /// `(λx.t)v → t{x:=v}` under balanced contexts.
    BetaShuf,
    /// `((λx.t)u)s → (λx.ts)u`.
    SigmaL,
    /// `v((λx.s)u) → (λx.vs)u`.
    SigmaR,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::BetaAbs,
        Rule::BetaVar,
        Rule::BetaInert,
        Rule::Mult,
        Rule::ExpAbs,
        Rule::ExpVar,
        Rule::BetaShuf,
        Rule::SigmaL,
        Rule::SigmaR,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Rule::BetaAbs => "beta_abs",
            Rule::BetaVar => "beta_var",
            Rule::BetaInert => "beta_i",
            Rule::Mult => "m",
            Rule::ExpAbs => "e_abs",
            Rule::ExpVar => "e_var",
            Rule::BetaShuf => "beta_shuf",
            Rule::SigmaL => "sigma1",
            Rule::SigmaR => "sigma3",
        }
    }

    pub fn is_exponential(self) -> bool {
        matches!(self, Rule::ExpAbs | Rule::ExpVar)
    }

    pub fn is_sigma(self) -> bool {
        matches!(self, Rule::SigmaL | Rule::SigmaR)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A contractible redex: its position and the rule that contracts it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RedexSite {
    pub path: Path,
    pub rule: Rule,
}

impl fmt::Display for RedexSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.rule, self.path)
    }
}

/// Step counters indexed by rule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Counts([usize; 9]);

impl Counts {
    pub fn get(&self, r: Rule) -> usize {
        self.0[r.index()]
    }

    pub fn add(&mut self, r: Rule) {
        self.0[r.index()] += 1;
    }

    /// Undoes one [`Counts::add`].
    pub fn remove(&mut self, r: Rule) {
        self.0[r.index()] -= 1;
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Multiplicative steps.
    pub fn m(&self) -> usize {
        self.get(Rule::Mult)
    }

    /// Exponential steps, of both kinds.
    pub fn e(&self) -> usize {
        self.get(Rule::ExpAbs) + self.get(Rule::ExpVar)
    }

    pub fn sigma(&self) -> usize {
        self.get(Rule::SigmaL) + self.get(Rule::SigmaR)
    }

    /// Counters that are non-zero or belong to `rules`, as `label=n` pairs.
    pub fn render(&self, rules: &[Rule]) -> String {
        Rule::ALL
            .iter()
            .filter(|r| rules.contains(r) || self.get(**r) > 0)
            .map(|r| format!("{}={}", r.label(), self.get(*r)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl std::ops::AddAssign for Counts {
    fn add_assign(&mut self, rhs: Counts) {
        for i in 0..self.0.len() {
            self.0[i] += rhs.0[i];
        }
    }
}

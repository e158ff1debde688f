//! Scored parsing of CNF grammars: Valiant's transitive-closure recursion
//! with (min,+)-products of bounded-difference blocks, and the cubic CYK
//! table as reference.

mod cyk;
mod dot;
mod function_matrix;
mod valiant;

pub use cyk::cyk_oracle;
pub use dot::{dot, union_fold, DotKernel, DotStats};
pub use function_matrix::{Contiguity, FunctionMatrix, IndexView};
pub use valiant::{initial_matrix, valiant_closure, Closure};

use crate::bd::BdProductConfig;
use crate::error::{Error, Result};
use crate::grammar::{classify, GrammarKind, ScoredGrammar, Symbol};
use crate::score::{Score, MAX_FINITE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryRule {
    pub lhs: usize,
    pub left: usize,
    pub right: usize,
    pub score: i64,
}

/// A CNF grammar flattened for table filling.
#[derive(Debug, Clone)]
pub struct CnfTables {
    pub nonterminals: usize,
    pub start: usize,
    /// `(X, s(X → c))` for every terminal `c`.
    pub unary: Vec<Vec<(usize, i64)>>,
    pub binary: Vec<BinaryRule>,
    pub start_epsilon: Option<i64>,
}

impl CnfTables {
    pub fn new(g: &ScoredGrammar) -> Result<Self> {
        let class = classify(g);
        if class.kind != GrammarKind::Cnf {
            return Err(Error::WrongGrammarClass {
                expected: "CNF",
                found: class,
            });
        }
        let mut t = CnfTables {
            nonterminals: g.nonterminal_count(),
            start: g.start(),
            unary: vec![Vec::new(); g.terminal_count()],
            binary: Vec::new(),
            start_epsilon: None,
        };
        for (lhs, rhs, score) in g.rules() {
            let score = i64::try_from(score)
                .ok()
                .filter(|&s| s <= MAX_FINITE)
                .ok_or(Error::Overflow)?;
            match *rhs {
                [] => t.start_epsilon = Some(score),
                [Symbol::T(c)] => t.unary[c].push((lhs, score)),
                [Symbol::N(left), Symbol::N(right)] => t.binary.push(BinaryRule {
                    lhs,
                    left,
                    right,
                    score,
                }),
                _ => unreachable!("classified as CNF"),
            }
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Valiant,
    Cyk,
}

#[derive(Debug, Clone)]
pub struct ParserConfig {
    /// Width handed to the BD product; blocks that are not `w`-BD fall back
    /// to the cubic kernel, so this only affects speed.
    pub w: i64,
    pub kernel: DotKernel,
    pub bd: BdProductConfig,
}

impl ParserConfig {
    pub fn with_w(w: i64) -> Self {
        ParserConfig {
            w,
            kernel: DotKernel::Bd,
            bd: BdProductConfig::with_w(w),
        }
    }
}

/// `s(S, σ)` for a CNF grammar; `σ` holds terminal ids.
pub fn parse_score(g: &ScoredGrammar, sigma: &[usize], engine: Engine, cfg: &ParserConfig) -> Result<Score> {
    let t = CnfTables::new(g)?;
    parse_score_tables(&t, sigma, engine, cfg).map(|(s, _)| s)
}

/// As [`parse_score`] on prepared tables, also returning the dot counters
/// (all zero for the CYK engine).
pub fn parse_score_tables(
    t: &CnfTables,
    sigma: &[usize],
    engine: Engine,
    cfg: &ParserConfig,
) -> Result<(Score, DotStats)> {
    if let Some(&c) = sigma.iter().find(|&&c| c >= t.unary.len()) {
        return Err(Error::UnknownSymbol(format!("terminal #{c}")));
    }
    if sigma.is_empty() {
        let s = t.start_epsilon.map_or(Score::INF, Score::finite);
        return Ok((s, DotStats::default()));
    }
    let n = sigma.len();
    match engine {
        Engine::Cyk => Ok((cyk_oracle(t, sigma).get(0, n, t.start), DotStats::default())),
        Engine::Valiant => {
            let closure = valiant_closure(&initial_matrix(t, sigma), t, cfg)?;
            Ok((closure.matrix.get(0, n, t.start), closure.stats))
        }
    }
}

//! Language edit distance, RNA folding and optimal stack generation as
//! scored parsing, each with an independent oracle.

pub mod led;
pub mod osg;
pub mod rna;

pub use led::{build_led_grammar, led_distance, led_search_oracle, led_solver, EditModel};
pub use osg::{build_osg_grammar, ops_with, osg_min_ops, osg_search_oracle, osg_solver, OSG_WIDTH};
pub use rna::{build_rna_grammar, fold_with, nussinov_oracle, rna_fold, rna_solver, RnaAlphabet};

use crate::error::Result;
use crate::grammar::{to_cnf, ScoredGrammar};
use crate::parser::{parse_score_tables, CnfTables, DotStats, Engine, ParserConfig};
use crate::score::Score;

/// A converted grammar ready for repeated parsing.
#[derive(Debug, Clone)]
pub struct Solver {
    pub grammar: ScoredGrammar,
    tables: CnfTables,
    pub w: i64,
}

impl Solver {
    /// Converts an almost-CNF grammar; `w` is the width handed to the parser.
    pub fn new(g: &ScoredGrammar, w: i64) -> Result<Self> {
        let grammar = to_cnf(g)?;
        let tables = CnfTables::new(&grammar)?;
        Ok(Solver { grammar, tables, w })
    }

    pub fn tables(&self) -> &CnfTables {
        &self.tables
    }

    pub fn score(&self, sigma: &[usize], engine: Engine) -> Result<Score> {
        self.score_with(sigma, engine, &ParserConfig::with_w(self.w)).map(|(s, _)| s)
    }

    pub fn score_with(&self, sigma: &[usize], engine: Engine, cfg: &ParserConfig) -> Result<(Score, DotStats)> {
        parse_score_tables(&self.tables, sigma, engine, cfg)
    }
}

fn as_count(s: Score) -> Option<u64> {
    s.value().map(|v| v as u64)
}

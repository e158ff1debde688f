//! Small grammars shipped with the crate, used by tests and the CLI.

use crate::grammar::ScoredGrammar;

pub const GRAMMARS: [(&str, &str); 5] = [
    ("dyck", include_str!("../../../fixtures/grammars/dyck.cfg")),
    ("palindrome", include_str!("../../../fixtures/grammars/palindrome.cfg")),
    ("anbn", include_str!("../../../fixtures/grammars/anbn.cfg")),
    ("ambiguous", include_str!("../../../fixtures/grammars/ambiguous.cfg")),
    ("chains", include_str!("../../../fixtures/grammars/chains.cfg")),
];

/// Every bundled grammar, parsed.
pub fn grammars() -> Vec<(&'static str, ScoredGrammar)> {
    GRAMMARS
        .iter()
        .map(|&(name, text)| (name, ScoredGrammar::parse_text(text).expect("bundled grammar parses")))
        .collect()
}

pub fn grammar(name: &str) -> Option<ScoredGrammar> {
    grammars().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{classify, GrammarKind};

    #[test]
    fn all_parse_as_almost_cnf() {
        for (name, g) in grammars() {
            assert_ne!(classify(&g).kind, GrammarKind::General, "{name}");
        }
        assert_eq!(classify(&grammar("ambiguous").unwrap()).kind, GrammarKind::Cnf);
        assert!(grammar("nope").is_none());
    }
}

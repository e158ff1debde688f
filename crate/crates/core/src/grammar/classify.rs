use super::{GrammarClass, GrammarKind, Production, ScoredGrammar, Symbol};

fn is_cnf_rule(g: &ScoredGrammar, lhs: usize, rhs: &[Symbol]) -> bool {
    let inner = |s: &Symbol| matches!(*s, Symbol::N(x) if x != g.start());
    match rhs {
        [] => lhs == g.start(),
        [Symbol::T(_)] => true,
        [y, z] => inner(y) && inner(z),
        _ => false,
    }
}

fn is_almost_cnf_rule(rhs: &[Symbol]) -> bool {
    matches!(
        rhs,
        [] | [Symbol::T(_)] | [Symbol::N(_)] | [Symbol::N(_), Symbol::N(_)]
    )
}

pub fn classify(g: &ScoredGrammar) -> GrammarClass {
    let first = |ok: &dyn Fn(usize, &[Symbol]) -> bool| {
        g.rules().find(|&(lhs, rhs, _)| !ok(lhs, rhs)).map(|(lhs, rhs, score)| Production {
            lhs,
            rhs: rhs.to_vec(),
            score,
        })
    };
    let Some(not_cnf) = first(&|lhs, rhs| is_cnf_rule(g, lhs, rhs)) else {
        return GrammarClass {
            kind: GrammarKind::Cnf,
            witness: None,
        };
    };
    match first(&|_, rhs| is_almost_cnf_rule(rhs)) {
        None => GrammarClass {
            kind: GrammarKind::AlmostCnf,
            witness: Some(not_cnf),
        },
        Some(w) => GrammarClass {
            kind: GrammarKind::General,
            witness: Some(w),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(text: &str) -> GrammarKind {
        classify(&ScoredGrammar::parse_text(text).unwrap()).kind
    }

    #[test]
    fn examples() {
        assert_eq!(kind("start S\n0 S -> 'a'"), GrammarKind::Cnf);
        assert_eq!(kind("start S\n0 S -> S S\n0 S -> eps"), GrammarKind::AlmostCnf);
        assert_eq!(kind("start S\n0 S -> 'a' S 'b'"), GrammarKind::General);
    }

    #[test]
    fn start_epsilon_is_cnf_but_others_are_not() {
        assert_eq!(kind("start S\n0 S -> A B\n0 S -> eps\n0 A -> 'a'\n0 B -> 'b'"), GrammarKind::Cnf);
        assert_eq!(kind("start S\n0 S -> A\n0 A -> 'a'"), GrammarKind::AlmostCnf);
        assert_eq!(kind("start S\n0 S -> A A\n1 A -> eps\n0 A -> 'a'"), GrammarKind::AlmostCnf);
        assert_eq!(kind("start S\n0 S -> A 'a'\n0 A -> 'a'"), GrammarKind::General);
    }

    #[test]
    fn witness_names_the_first_offender() {
        let g = ScoredGrammar::parse_text("start S\n0 S -> A A\n0 A -> 'a'\n2 A -> eps").unwrap();
        let c = classify(&g);
        let w = c.witness.unwrap();
        assert_eq!((g.nonterminal_name(w.lhs), w.rhs.len(), w.score), ("A", 0, 2));
    }
}

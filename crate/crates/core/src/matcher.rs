//! Trie-backed token matching against a compiled lexicon.
//!
//! A stem pattern matches any token that starts with its surface, an
//! exact pattern only the token itself. When several patterns match
//! one token, the longest surface wins; at equal length an exact
//! pattern beats a stem. A token contributes each category at most
//! once, and each foundation at most once.

use std::collections::{BTreeMap, HashMap};

use crate::category::{MoralCategory, MoralFoundation, Polarity};
use crate::lexicon::{normalize_surface, Lexicon, LexiconEntry, Pattern, PatternKind};

/// Polarity context a document was written under. `Combined` marks
/// virtue and vice material pooled together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContextPolarity {
    Virtue,
    Vice,
    Combined,
}

impl ContextPolarity {
    pub fn parse(s: &str) -> Option<ContextPolarity> {
        match s.to_ascii_lowercase().as_str() {
            "virtue" => Some(ContextPolarity::Virtue),
            "vice" => Some(ContextPolarity::Vice),
            "combined" => Some(ContextPolarity::Combined),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ContextPolarity::Virtue => "virtue",
            ContextPolarity::Vice => "vice",
            ContextPolarity::Combined => "combined",
        }
    }
}

/// An ordered token sequence with its collection metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenDocument {
    pub doc_id: String,
    pub participant_id: Option<String>,
    pub context_foundation: Option<MoralFoundation>,
    pub context_polarity: Option<ContextPolarity>,
    tokens: Vec<String>,
}

impl TokenDocument {
    /// Tokens must be non-empty and contain no whitespace.
    pub fn new(
        doc_id: impl Into<String>,
        tokens: Vec<String>,
    ) -> Result<TokenDocument, TokenError> {
        for tok in &tokens {
            if tok.is_empty() {
                return Err(TokenError::Empty);
            }
            if tok.chars().any(char::is_whitespace) {
                return Err(TokenError::Whitespace(tok.clone()));
            }
        }
        Ok(TokenDocument {
            doc_id: doc_id.into(),
            participant_id: None,
            context_foundation: None,
            context_polarity: None,
            tokens,
        })
    }

    pub fn with_participant(mut self, id: impl Into<String>) -> Self {
        self.participant_id = Some(id.into());
        self
    }

    pub fn with_context(mut self, foundation: MoralFoundation) -> Self {
        self.context_foundation = Some(foundation);
        self
    }

    pub fn with_polarity(mut self, polarity: ContextPolarity) -> Self {
        self.context_polarity = Some(polarity);
        self
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TokenError {
    #[error("empty token")]
    Empty,
    #[error("token `{0}` contains whitespace")]
    Whitespace(String),
}

/// A lexicon entry as stored in the compiled trie.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledEntry {
    pub pattern: Pattern,
    pub categories: Vec<MoralCategory>,
}

#[derive(Debug, Default)]
struct TrieNode {
    children: HashMap<char, usize>,
    /// Indexes into `entries` for patterns whose surface ends here,
    /// one slot per kind.
    exact: Option<usize>,
    stem: Option<usize>,
}

/// A lexicon compiled into a character trie for per-token lookup.
/// Compilation is lossless: [`CompiledLexicon::entries`] recovers the
/// source patterns and categories.
#[derive(Debug)]
pub struct CompiledLexicon {
    nodes: Vec<TrieNode>,
    entries: Vec<CompiledEntry>,
}

impl CompiledLexicon {
    pub fn compile(lexicon: &Lexicon) -> CompiledLexicon {
        let mut compiled = CompiledLexicon {
            nodes: vec![TrieNode::default()],
            entries: Vec::with_capacity(lexicon.len()),
        };
        for entry in lexicon.entries() {
            compiled.insert(entry);
        }
        compiled
    }

    fn insert(&mut self, entry: &LexiconEntry) {
        let mut node = 0usize;
        for ch in entry.pattern().surface().chars() {
            let next = match self.nodes[node].children.get(&ch) {
                Some(&i) => i,
                None => {
                    let i = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[node].children.insert(ch, i);
                    i
                }
            };
            node = next;
        }
        let idx = self.entries.len();
        self.entries.push(CompiledEntry {
            pattern: entry.pattern().clone(),
            categories: entry.categories().to_vec(),
        });
        let slot = match entry.pattern().kind() {
            PatternKind::Exact => &mut self.nodes[node].exact,
            PatternKind::StemPrefix => &mut self.nodes[node].stem,
        };
        debug_assert!(slot.is_none(), "lexicon guarantees unique surfaces");
        *slot = Some(idx);
    }

    pub fn entries(&self) -> &[CompiledEntry] {
        &self.entries
    }

    /// Matches one token. The token is NFC-normalized and ASCII
    /// case-folded exactly like pattern surfaces were.
    ///
    /// All matching entries are collected, then the tie-break picks the
    /// longest surface, preferring exact over stem at equal length. In
    /// the (structurally impossible for parsed lexicons) case of a
    /// residual tie, the winners' category sets are unioned.
    pub fn match_token(&self, token: &str) -> Option<TokenMatch<'_>> {
        let token = normalize_surface(token);
        let mut candidates: Vec<(usize, usize)> = Vec::new(); // (surface chars, entry idx)
        let mut node = 0usize;
        let mut depth = 0usize;
        let total = token.chars().count();
        // the root cannot be terminal: surfaces are non-empty
        for ch in token.chars() {
            match self.nodes[node].children.get(&ch) {
                Some(&next) => {
                    node = next;
                    depth += 1;
                }
                None => break,
            }
            if let Some(idx) = self.nodes[node].stem {
                candidates.push((depth, idx));
            }
            if depth == total {
                if let Some(idx) = self.nodes[node].exact {
                    candidates.push((depth, idx));
                }
            }
        }
        if candidates.is_empty() {
            return None;
        }
        let key = |&(len, idx): &(usize, usize)| {
            let exact = self.entries[idx].pattern.kind() == PatternKind::Exact;
            (len, exact)
        };
        let best = candidates.iter().map(key).max().unwrap();
        let mut entries: Vec<&CompiledEntry> = candidates
            .iter()
            .filter(|c| key(c) == best)
            .map(|&(_, idx)| &self.entries[idx])
            .collect();
        entries.sort_by_key(|e| e.pattern.surface().to_string());
        let mut categories = Vec::new();
        for entry in &entries {
            for cat in &entry.categories {
                if !categories.contains(cat) {
                    categories.push(*cat);
                }
            }
        }
        Some(TokenMatch {
            entries,
            categories,
        })
    }

    /// Matches every token of a document and aggregates counts.
    pub fn match_document(&self, doc: &TokenDocument) -> MatchReport {
        let mut hits = Vec::new();
        let mut per_category: BTreeMap<MoralCategory, u64> = BTreeMap::new();
        let mut per_foundation: BTreeMap<MoralFoundation, u64> = BTreeMap::new();
        for (index, token) in doc.tokens.iter().enumerate() {
            let Some(found) = self.match_token(token) else {
                continue;
            };
            let mut foundations: Vec<MoralFoundation> = Vec::new();
            for cat in &found.categories {
                *per_category.entry(*cat).or_insert(0) += 1;
                if let MoralCategory::Foundation(f, Polarity::Virtue | Polarity::Vice) = cat {
                    if !foundations.contains(f) {
                        foundations.push(*f);
                    }
                }
            }
            for f in foundations {
                *per_foundation.entry(f).or_insert(0) += 1;
            }
            hits.push(Hit {
                token_index: index,
                pattern: found.entries[0].pattern.clone(),
                categories: found.categories.clone(),
            });
        }
        MatchReport {
            doc_id: doc.doc_id.clone(),
            token_count: doc.token_count(),
            hits,
            per_category,
            per_foundation,
        }
    }
}

/// Result of matching a single token, after tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenMatch<'a> {
    /// Winning entry (or entries, on a residual tie), sorted by surface.
    pub entries: Vec<&'a CompiledEntry>,
    /// Deduplicated categories of the winners.
    pub categories: Vec<MoralCategory>,
}

/// One matched token inside a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hit {
    pub token_index: usize,
    pub pattern: Pattern,
    pub categories: Vec<MoralCategory>,
}

/// Per-document match counts with token-level provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub doc_id: String,
    pub token_count: usize,
    pub hits: Vec<Hit>,
    per_category: BTreeMap<MoralCategory, u64>,
    per_foundation: BTreeMap<MoralFoundation, u64>,
}

impl MatchReport {
    pub fn category_count(&self, cat: MoralCategory) -> u64 {
        self.per_category.get(&cat).copied().unwrap_or(0)
    }

    /// Virtue and vice combined; a token counts at most once per
    /// foundation even when it hits both polarities.
    pub fn foundation_count(&self, foundation: MoralFoundation) -> u64 {
        self.per_foundation.get(&foundation).copied().unwrap_or(0)
    }

    pub fn category_counts(&self) -> &BTreeMap<MoralCategory, u64> {
        &self.per_category
    }

    pub fn foundation_counts(&self) -> &BTreeMap<MoralFoundation, u64> {
        &self.per_foundation
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{parse_dic, standard_category_table, LexiconEntry};

    const HARM_VIRTUE: MoralCategory =
        MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Virtue);
    const HARM_VICE: MoralCategory =
        MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Vice);
    const FAIRNESS_VIRTUE: MoralCategory =
        MoralCategory::Foundation(MoralFoundation::Fairness, Polarity::Virtue);

    fn lexicon_of(rows: &[(&str, &[MoralCategory])]) -> Lexicon {
        let entries = rows
            .iter()
            .map(|(notation, cats)| {
                LexiconEntry::new(
                    Pattern::from_notation(notation).unwrap(),
                    cats.iter().copied(),
                )
                .unwrap()
            })
            .collect();
        Lexicon::new("", standard_category_table(), entries).unwrap()
    }

    #[test]
    fn empty_lexicon_matches_nothing() {
        let compiled = CompiledLexicon::compile(&Lexicon::empty(""));
        assert!(compiled.match_token("anything").is_none());
    }

    #[test]
    fn stem_matches_any_suffix() {
        let lex = lexicon_of(&[("justifi*", &[FAIRNESS_VIRTUE])]);
        let compiled = CompiledLexicon::compile(&lex);
        for token in ["justification", "justifier", "justifies", "justifi"] {
            let m = compiled.match_token(token).expect(token);
            assert_eq!(m.categories, vec![FAIRNESS_VIRTUE]);
        }
        assert!(compiled.match_token("justice").is_none());
    }

    #[test]
    fn japanese_stem_prefix() {
        let lex = lexicon_of(&[("安全*", &[HARM_VIRTUE])]);
        let compiled = CompiledLexicon::compile(&lex);
        let m = compiled.match_token("安全な").unwrap();
        assert_eq!(m.categories, vec![HARM_VIRTUE]);
    }

    #[test]
    fn exact_requires_equality() {
        let lex = lexicon_of(&[("just", &[FAIRNESS_VIRTUE])]);
        let compiled = CompiledLexicon::compile(&lex);
        assert!(compiled.match_token("justify").is_none());
        assert!(compiled.match_token("just").is_some());
    }

    #[test]
    fn longest_surface_wins_and_exact_beats_stem() {
        // both orders must give the same winner
        for rows in [
            vec![("kill", &[HARM_VICE][..]), ("kil*", &[FAIRNESS_VIRTUE][..])],
            vec![("kil*", &[FAIRNESS_VIRTUE][..]), ("kill", &[HARM_VICE][..])],
        ] {
            let lex = lexicon_of(&rows);
            let compiled = CompiledLexicon::compile(&lex);
            let m = compiled.match_token("kill").unwrap();
            assert_eq!(m.entries.len(), 1);
            assert_eq!(m.entries[0].pattern.notation(), "kill");
            assert_eq!(m.categories, vec![HARM_VICE]);
            // longer stem wins over shorter stem on longer tokens
            let m = compiled.match_token("killing").unwrap();
            assert_eq!(m.entries[0].pattern.notation(), "kil*");
        }
    }

    #[test]
    fn equal_length_exact_beats_stem() {
        // same surface with both kinds is not constructible through
        // Lexicon::new; build the trie directly to pin the comparator.
        let mut compiled = CompiledLexicon {
            nodes: vec![TrieNode::default()],
            entries: Vec::new(),
        };
        compiled.insert(
            &LexiconEntry::new(Pattern::stem("kill").unwrap(), [FAIRNESS_VIRTUE]).unwrap(),
        );
        compiled
            .insert(&LexiconEntry::new(Pattern::exact("kill").unwrap(), [HARM_VICE]).unwrap());
        let m = compiled.match_token("kill").unwrap();
        assert_eq!(m.entries.len(), 1);
        assert_eq!(m.categories, vec![HARM_VICE]);
        // on a longer token only the stem can match
        let m = compiled.match_token("killing").unwrap();
        assert_eq!(m.categories, vec![FAIRNESS_VIRTUE]);
    }

    #[test]
    fn match_document_counts_and_foundation_rollup() {
        let lex = lexicon_of(&[("安全*", &[HARM_VIRTUE]), ("殺す", &[HARM_VICE])]);
        let compiled = CompiledLexicon::compile(&lex);
        let doc = TokenDocument::new(
            "d1",
            vec!["安全".into(), "殺す".into(), "昼食".into()],
        )
        .unwrap();
        let report = compiled.match_document(&doc);
        assert_eq!(report.token_count, 3);
        assert_eq!(report.category_count(HARM_VIRTUE), 1);
        assert_eq!(report.category_count(HARM_VICE), 1);
        assert_eq!(report.foundation_count(MoralFoundation::Harm), 2);
        assert_eq!(report.foundation_count(MoralFoundation::Purity), 0);
        assert_eq!(report.hits.len(), 2);
        assert_eq!(report.hits[0].token_index, 0);
    }

    #[test]
    fn empty_document_all_zero() {
        let lex = lexicon_of(&[("安全*", &[HARM_VIRTUE])]);
        let compiled = CompiledLexicon::compile(&lex);
        let doc = TokenDocument::new("d0", vec![]).unwrap();
        let report = compiled.match_document(&doc);
        assert_eq!(report.token_count, 0);
        assert!(report.hits.is_empty());
        assert_eq!(report.foundation_count(MoralFoundation::Harm), 0);
    }

    #[test]
    fn both_polarities_count_foundation_once() {
        let lex = lexicon_of(&[("傷*", &[HARM_VICE, HARM_VIRTUE])]);
        let compiled = CompiledLexicon::compile(&lex);
        let doc = TokenDocument::new("d", vec!["傷つく".into()]).unwrap();
        let report = compiled.match_document(&doc);
        assert_eq!(report.category_count(HARM_VICE), 1);
        assert_eq!(report.category_count(HARM_VIRTUE), 1);
        assert_eq!(report.foundation_count(MoralFoundation::Harm), 1);
    }

    #[test]
    fn compilation_is_lossless() {
        let parsed = parse_dic(
            "%\n1\tHarmVirtue\n3\tFairnessVirtue\n%\nkill\t1\njustifi*\t3\n".as_bytes(),
        )
        .unwrap();
        let compiled = CompiledLexicon::compile(&parsed.lexicon);
        let mut recovered: Vec<(String, Vec<MoralCategory>)> = compiled
            .entries()
            .iter()
            .map(|e| (e.pattern.notation(), e.categories.clone()))
            .collect();
        recovered.sort();
        let mut source: Vec<(String, Vec<MoralCategory>)> = parsed
            .lexicon
            .entries()
            .iter()
            .map(|e| (e.pattern().notation(), e.categories().to_vec()))
            .collect();
        source.sort();
        assert_eq!(recovered, source);
    }

    #[test]
    fn token_document_rejects_whitespace() {
        assert!(TokenDocument::new("d", vec!["a b".into()]).is_err());
        assert!(TokenDocument::new("d", vec!["".into()]).is_err());
    }
}

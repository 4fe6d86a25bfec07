//! Dictionary data model and the LIWC-style `.dic` file format.
//!
//! A `.dic` file is a `%`-delimited header of `<id><TAB><categoryName>`
//! lines followed by entry lines `<pattern><TAB><id> [<id> ...]`, where
//! a trailing `*` marks a stem-prefix pattern. Blank lines and lines
//! starting with `#` are ignored. Output always uses TAB separators and
//! LF line endings, so serialized form is canonical and byte-stable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};

use unicode_normalization::UnicodeNormalization;

use crate::category::MoralCategory;

/// How a pattern matches a token: by equality or by prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternKind {
    Exact,
    StemPrefix,
}

/// A surface pattern. The `*` stem marker is notation only and never
/// stored; surfaces are NFC-normalized with ASCII case folded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    kind: PatternKind,
    surface: String,
}

impl Pattern {
    pub fn new(kind: PatternKind, surface: &str) -> Result<Pattern, PatternError> {
        let surface = normalize_surface(surface);
        if surface.is_empty() {
            return Err(PatternError::Empty);
        }
        if surface.chars().any(char::is_whitespace) {
            return Err(PatternError::Whitespace(surface));
        }
        if surface.contains('*') {
            return Err(PatternError::Asterisk(surface));
        }
        Ok(Pattern { kind, surface })
    }

    pub fn exact(surface: &str) -> Result<Pattern, PatternError> {
        Pattern::new(PatternKind::Exact, surface)
    }

    pub fn stem(surface: &str) -> Result<Pattern, PatternError> {
        Pattern::new(PatternKind::StemPrefix, surface)
    }

    /// Parses dictionary notation: a trailing `*` marks a stem prefix.
    pub fn from_notation(text: &str) -> Result<Pattern, PatternError> {
        match text.strip_suffix('*') {
            Some(stem) => Pattern::stem(stem),
            None => Pattern::exact(text),
        }
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn char_len(&self) -> usize {
        self.surface.chars().count()
    }

    /// Dictionary notation: surface plus `*` for stem prefixes.
    pub fn notation(&self) -> String {
        match self.kind {
            PatternKind::Exact => self.surface.clone(),
            PatternKind::StemPrefix => format!("{}*", self.surface),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("pattern is empty")]
    Empty,
    #[error("pattern `{0}` contains whitespace")]
    Whitespace(String),
    #[error("pattern `{0}` contains an interior asterisk")]
    Asterisk(String),
}

/// NFC normalization plus ASCII case folding. Latin-script dictionary
/// matching is case-insensitive in practice; non-Latin scripts have no
/// case and pass through unchanged.
pub fn normalize_surface(s: &str) -> String {
    s.nfc().map(|c| c.to_ascii_lowercase()).collect()
}

/// One dictionary entry: a pattern and the categories it signals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pattern: Pattern,
    categories: Vec<MoralCategory>,
}

impl LexiconEntry {
    /// Duplicate categories are collapsed, keeping first occurrence
    /// order. An empty category list is rejected.
    pub fn new(
        pattern: Pattern,
        categories: impl IntoIterator<Item = MoralCategory>,
    ) -> Result<LexiconEntry, LexiconError> {
        let mut seen = Vec::new();
        for cat in categories {
            if !seen.contains(&cat) {
                seen.push(cat);
            }
        }
        if seen.is_empty() {
            return Err(LexiconError::NoCategories(pattern.notation()));
        }
        Ok(LexiconEntry {
            pattern,
            categories: seen,
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn categories(&self) -> &[MoralCategory] {
        &self.categories
    }
}

/// A named dictionary: a category id table plus an ordered entry list.
///
/// Invariants checked at construction: entry surfaces are unique (one
/// surface may not appear twice, even with different kinds), every
/// entry category appears in the table, and no two ids name the same
/// category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    name: String,
    category_table: BTreeMap<u32, MoralCategory>,
    entries: Vec<LexiconEntry>,
}

impl Lexicon {
    pub fn new(
        name: impl Into<String>,
        category_table: BTreeMap<u32, MoralCategory>,
        entries: Vec<LexiconEntry>,
    ) -> Result<Lexicon, LexiconError> {
        let mut names_seen: HashMap<MoralCategory, u32> = HashMap::new();
        for (&id, &cat) in &category_table {
            if let Some(&prev) = names_seen.get(&cat) {
                return Err(LexiconError::DuplicateCategoryName {
                    category: cat,
                    ids: (prev, id),
                });
            }
            names_seen.insert(cat, id);
        }
        let mut surfaces: HashMap<&str, PatternKind> = HashMap::new();
        for entry in &entries {
            if surfaces
                .insert(entry.pattern.surface(), entry.pattern.kind())
                .is_some()
            {
                return Err(LexiconError::DuplicateSurface(
                    entry.pattern.surface().to_string(),
                ));
            }
            for cat in &entry.categories {
                if !names_seen.contains_key(cat) {
                    return Err(LexiconError::CategoryNotInTable {
                        pattern: entry.pattern.notation(),
                        category: *cat,
                    });
                }
            }
        }
        Ok(Lexicon {
            name: name.into(),
            category_table,
            entries,
        })
    }

    /// An empty lexicon over the standard eleven-category table.
    pub fn empty(name: impl Into<String>) -> Lexicon {
        Lexicon::new(name, standard_category_table(), Vec::new())
            .expect("standard table is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn category_table(&self) -> &BTreeMap<u32, MoralCategory> {
        &self.category_table
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Smallest id naming `cat` in the table.
    pub fn id_of(&self, cat: MoralCategory) -> Option<u32> {
        self.category_table
            .iter()
            .find(|(_, c)| **c == cat)
            .map(|(id, _)| *id)
    }

    /// Per-category entry counts in canonical category order. An entry
    /// listed under k categories contributes to k counts.
    pub fn category_counts(&self) -> Vec<(MoralCategory, usize)> {
        MoralCategory::ALL
            .iter()
            .map(|&cat| {
                let n = self
                    .entries
                    .iter()
                    .filter(|e| e.categories.contains(&cat))
                    .count();
                (cat, n)
            })
            .collect()
    }

    /// Foundation-level dictionary sizes: virtue plus vice category
    /// counts, summed over memberships.
    pub fn foundation_sizes(&self) -> BTreeMap<crate::category::MoralFoundation, usize> {
        use crate::category::{MoralFoundation, Polarity};
        MoralFoundation::ALL
            .iter()
            .map(|&f| {
                let n = self
                    .entries
                    .iter()
                    .flat_map(|e| e.categories.iter())
                    .filter(|c| {
                        matches!(c, MoralCategory::Foundation(g, Polarity::Virtue | Polarity::Vice) if *g == f)
                    })
                    .count();
                (f, n)
            })
            .collect()
    }
}

/// The standard eleven-category table with ids 1..=11.
pub fn standard_category_table() -> BTreeMap<u32, MoralCategory> {
    MoralCategory::ALL
        .iter()
        .enumerate()
        .map(|(i, &cat)| (i as u32 + 1, cat))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("entry `{0}` has no categories")]
    NoCategories(String),
    #[error("surface `{0}` appears in more than one entry")]
    DuplicateSurface(String),
    #[error("ids {} and {} both name category {category}", ids.0, ids.1)]
    DuplicateCategoryName {
        category: MoralCategory,
        ids: (u32, u32),
    },
    #[error("entry `{pattern}` references category {category} absent from the table")]
    CategoryNotInTable {
        pattern: String,
        category: MoralCategory,
    },
}

/// Errors from [`parse_dic`], with 1-based line numbers.
#[derive(Debug, thiserror::Error)]
pub enum DicError {
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed header: {message}")]
    MalformedHeader { line: usize, message: String },
    #[error("line {line}: entry references unknown category id {id}")]
    UnknownCategoryId { line: usize, id: u32 },
    #[error("line {line}: empty pattern")]
    EmptyPattern { line: usize },
    #[error("line {line}: pattern surface `{surface}` already defined with a different kind")]
    DuplicatePatternConflict { line: usize, surface: String },
    #[error("line {line}: malformed entry: {message}")]
    MalformedEntry { line: usize, message: String },
}

impl DicError {
    /// Line number the error points at, when it has one.
    pub fn line(&self) -> Option<usize> {
        match self {
            DicError::Io(_) => None,
            DicError::MalformedHeader { line, .. }
            | DicError::UnknownCategoryId { line, .. }
            | DicError::EmptyPattern { line }
            | DicError::DuplicatePatternConflict { line, .. }
            | DicError::MalformedEntry { line, .. } => Some(*line),
        }
    }
}

/// Non-fatal observations from parsing, e.g. duplicate patterns whose
/// category sets were unioned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

/// A parsed dictionary plus any warnings produced on the way.
#[derive(Debug)]
pub struct ParsedDic {
    pub lexicon: Lexicon,
    pub warnings: Vec<ParseWarning>,
}

/// Parses a LIWC-style `.dic` stream. Entry order follows the file;
/// duplicate `(pattern, id)` listings collapse; a pattern repeated with
/// the same kind unions its category sets under a warning; a pattern
/// repeated with a different kind is an error.
pub fn parse_dic<R: Read>(input: R) -> Result<ParsedDic, DicError> {
    let reader = BufReader::new(input);
    let mut warnings = Vec::new();
    let mut category_table: BTreeMap<u32, MoralCategory> = BTreeMap::new();
    let mut category_names: HashMap<MoralCategory, u32> = HashMap::new();
    // entry index by surface, for duplicate handling
    let mut by_surface: HashMap<String, usize> = HashMap::new();
    let mut entries: Vec<(Pattern, Vec<MoralCategory>)> = Vec::new();

    #[derive(PartialEq)]
    enum Section {
        BeforeHeader,
        Header,
        Entries,
    }
    let mut section = Section::BeforeHeader;
    let mut last_line = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let mut line = line?;
        if lineno == 1 {
            line = line.trim_start_matches('\u{feff}').to_string();
        }
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed == "%" {
            section = match section {
                Section::BeforeHeader => Section::Header,
                Section::Header => Section::Entries,
                Section::Entries => {
                    return Err(DicError::MalformedHeader {
                        line: lineno,
                        message: "unexpected third `%` sentinel".into(),
                    })
                }
            };
            continue;
        }
        match section {
            Section::BeforeHeader => {
                return Err(DicError::MalformedHeader {
                    line: lineno,
                    message: "content before the opening `%` sentinel".into(),
                });
            }
            Section::Header => {
                let mut fields = trimmed.splitn(2, |c: char| c == '\t' || c == ' ');
                let id_text = fields.next().unwrap_or("");
                let name_text = fields.next().map(str::trim).unwrap_or("");
                let id: u32 = id_text.parse().map_err(|_| DicError::MalformedHeader {
                    line: lineno,
                    message: format!("category id `{id_text}` is not an integer"),
                })?;
                let cat =
                    MoralCategory::parse(name_text).ok_or_else(|| DicError::MalformedHeader {
                        line: lineno,
                        message: format!("unknown category name `{name_text}`"),
                    })?;
                if category_table.insert(id, cat).is_some() {
                    return Err(DicError::MalformedHeader {
                        line: lineno,
                        message: format!("category id {id} defined twice"),
                    });
                }
                if let Some(prev) = category_names.insert(cat, id) {
                    return Err(DicError::MalformedHeader {
                        line: lineno,
                        message: format!("category {cat} already named by id {prev}"),
                    });
                }
            }
            Section::Entries => {
                let mut fields = trimmed.split(|c: char| c == '\t' || c == ' ').filter(|f| !f.is_empty());
                let pattern_text = fields.next().unwrap_or("");
                let pattern =
                    Pattern::from_notation(pattern_text).map_err(|err| match err {
                        PatternError::Empty => DicError::EmptyPattern { line: lineno },
                        other => DicError::MalformedEntry {
                            line: lineno,
                            message: other.to_string(),
                        },
                    })?;
                let mut cats = Vec::new();
                for id_text in fields {
                    let id: u32 = id_text.parse().map_err(|_| DicError::MalformedEntry {
                        line: lineno,
                        message: format!("category id `{id_text}` is not an integer"),
                    })?;
                    let cat = *category_table
                        .get(&id)
                        .ok_or(DicError::UnknownCategoryId { line: lineno, id })?;
                    if !cats.contains(&cat) {
                        cats.push(cat);
                    }
                }
                if cats.is_empty() {
                    return Err(DicError::MalformedEntry {
                        line: lineno,
                        message: format!("entry `{pattern_text}` lists no category ids"),
                    });
                }
                match by_surface.get(pattern.surface()) {
                    Some(&i) => {
                        let (existing, existing_cats) = &mut entries[i];
                        if existing.kind() != pattern.kind() {
                            return Err(DicError::DuplicatePatternConflict {
                                line: lineno,
                                surface: pattern.surface().to_string(),
                            });
                        }
                        for cat in cats {
                            if !existing_cats.contains(&cat) {
                                existing_cats.push(cat);
                            }
                        }
                        warnings.push(ParseWarning {
                            line: lineno,
                            message: format!(
                                "duplicate pattern `{}`: category sets unioned",
                                pattern.notation()
                            ),
                        });
                    }
                    None => {
                        by_surface.insert(pattern.surface().to_string(), entries.len());
                        entries.push((pattern, cats));
                    }
                }
            }
        }
    }

    if section != Section::Entries {
        return Err(DicError::MalformedHeader {
            line: last_line,
            message: "missing `%` sentinel".into(),
        });
    }

    let entries = entries
        .into_iter()
        .map(|(pattern, cats)| LexiconEntry::new(pattern, cats).expect("cats nonempty"))
        .collect();
    let lexicon = Lexicon::new("", category_table, entries).map_err(|e| DicError::MalformedEntry {
        line: last_line,
        message: e.to_string(),
    })?;
    Ok(ParsedDic { lexicon, warnings })
}

/// Serializes to canonical `.dic` bytes: TAB separators, `*` stem
/// suffix, `%` sentinels, LF endings. `parse_dic` of the output equals
/// the input lexicon.
pub fn serialize_dic(lexicon: &Lexicon) -> Vec<u8> {
    let mut out = Vec::new();
    write_dic(lexicon, &mut out).expect("writing to Vec cannot fail");
    out
}

pub fn write_dic<W: Write>(lexicon: &Lexicon, writer: &mut W) -> std::io::Result<()> {
    writeln!(writer, "%")?;
    for (id, cat) in lexicon.category_table() {
        writeln!(writer, "{id}\t{}", cat.name())?;
    }
    writeln!(writer, "%")?;
    for entry in lexicon.entries() {
        write!(writer, "{}", entry.pattern().notation())?;
        for cat in entry.categories() {
            let id = lexicon.id_of(*cat).expect("invariant: category in table");
            write!(writer, "\t{id}")?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{MoralFoundation, Polarity};

    const HARM_VIRTUE: MoralCategory =
        MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Virtue);
    const HARM_VICE: MoralCategory =
        MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Vice);
    const PURITY_VICE: MoralCategory =
        MoralCategory::Foundation(MoralFoundation::Purity, Polarity::Vice);

    fn parse(text: &str) -> ParsedDic {
        parse_dic(text.as_bytes()).expect("parse")
    }

    #[test]
    fn minimal_file_single_stem() {
        let parsed = parse("%\n1\tHarmVirtue\n%\nsafe*\t1\n");
        let lex = parsed.lexicon;
        assert_eq!(lex.len(), 1);
        let entry = &lex.entries()[0];
        assert_eq!(entry.pattern().kind(), PatternKind::StemPrefix);
        assert_eq!(entry.pattern().surface(), "safe");
        assert_eq!(entry.categories(), &[HARM_VIRTUE]);
    }

    #[test]
    fn multi_category_entry_with_space_separated_ids() {
        let parsed = parse("%\n2\tHarmVice\n10\tPurityVice\n%\nkizu\t2 10\n");
        let entry = &parsed.lexicon.entries()[0];
        assert_eq!(entry.categories(), &[HARM_VICE, PURITY_VICE]);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let parsed = parse("# fixture\n\n%\n1\tHarmVirtue\n\n%\n# entries\nsafe*\t1\n\n");
        assert_eq!(parsed.lexicon.len(), 1);
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn ascii_patterns_are_case_folded() {
        let parsed = parse("%\n1\tHarmVirtue\n%\nSafe*\t1\n");
        assert_eq!(parsed.lexicon.entries()[0].pattern().surface(), "safe");
    }

    #[test]
    fn missing_sentinel_is_malformed_header() {
        let err = parse_dic("1\tHarmVirtue\n%\nsafe\t1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DicError::MalformedHeader { line: 1, .. }));
        let err = parse_dic("%\n1\tHarmVirtue\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DicError::MalformedHeader { .. }));
    }

    #[test]
    fn unknown_category_id_names_line() {
        let err = parse_dic("%\n1\tHarmVirtue\n%\nsafe\t7\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DicError::UnknownCategoryId { line: 4, id: 7 }));
    }

    #[test]
    fn bare_asterisk_is_empty_pattern() {
        let err = parse_dic("%\n1\tHarmVirtue\n%\n*\t1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DicError::EmptyPattern { line: 4 }));
    }

    #[test]
    fn same_surface_two_kinds_conflicts() {
        let err = parse_dic("%\n1\tHarmVirtue\n%\nsafe\t1\nsafe*\t1\n".as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            DicError::DuplicatePatternConflict { line: 5, .. }
        ));
    }

    #[test]
    fn duplicate_same_kind_unions_with_warning() {
        let parsed = parse("%\n1\tHarmVirtue\n2\tHarmVice\n%\nsafe*\t1\nsafe*\t2\n");
        assert_eq!(parsed.lexicon.len(), 1);
        assert_eq!(
            parsed.lexicon.entries()[0].categories(),
            &[HARM_VIRTUE, HARM_VICE]
        );
        assert_eq!(parsed.warnings.len(), 1);
    }

    #[test]
    fn duplicate_pattern_id_pair_collapses_silently_within_line() {
        let parsed = parse("%\n1\tHarmVirtue\n%\nsafe*\t1 1\n");
        assert_eq!(parsed.lexicon.entries()[0].categories(), &[HARM_VIRTUE]);
    }

    #[test]
    fn serialize_empty_lexicon_has_header_only() {
        let lex = Lexicon::empty("");
        let bytes = serialize_dic(&lex);
        let text = String::from_utf8(bytes).unwrap();
        assert_eq!(text.lines().count(), 13); // 2 sentinels + 11 ids
        assert!(text.starts_with("%\n1\tHarmVirtue\n"));
        let back = parse_dic(text.as_bytes()).unwrap().lexicon;
        assert_eq!(back, lex);
    }

    #[test]
    fn one_entry_round_trips() {
        let parsed = parse("%\n1\tHarmVirtue\n%\nsafe*\t1\n");
        let bytes = serialize_dic(&parsed.lexicon);
        let again = parse_dic(bytes.as_slice()).unwrap().lexicon;
        assert_eq!(again, parsed.lexicon);
        // canonical form is a fixpoint
        assert_eq!(serialize_dic(&again), bytes);
    }

    #[test]
    fn category_counts_empty_is_all_zero() {
        let lex = Lexicon::empty("");
        assert!(lex.category_counts().iter().all(|(_, n)| *n == 0));
    }

    #[test]
    fn duplicate_category_names_rejected() {
        let err = parse_dic("%\n1\tHarmVirtue\n2\tHarmVirtue\n%\nsafe\t1\n".as_bytes());
        assert!(matches!(
            err.unwrap_err(),
            DicError::MalformedHeader { line: 3, .. }
        ));
    }

    #[test]
    fn builder_rejects_duplicate_surface_across_kinds() {
        let entries = vec![
            LexiconEntry::new(Pattern::exact("safe").unwrap(), [HARM_VIRTUE]).unwrap(),
            LexiconEntry::new(Pattern::stem("safe").unwrap(), [HARM_VICE]).unwrap(),
        ];
        let err = Lexicon::new("", standard_category_table(), entries).unwrap_err();
        assert!(matches!(err, LexiconError::DuplicateSurface(_)));
    }

    #[test]
    fn foundation_sizes_sum_virtue_and_vice() {
        let parsed = parse("%\n1\tHarmVirtue\n2\tHarmVice\n%\nsafe*\t1\nkizu\t2\nkill\t2\n");
        let sizes = parsed.lexicon.foundation_sizes();
        assert_eq!(sizes[&MoralFoundation::Harm], 3);
        assert_eq!(sizes[&MoralFoundation::Purity], 0);
    }
}

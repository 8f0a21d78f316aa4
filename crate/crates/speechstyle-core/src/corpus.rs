//! Episode records, label mapping, language grouping and fold splitting.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Binary speech-style class. `Scripted` is the positive class: classifier
/// scores near 1 mean scripted, near 0 mean spontaneous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Label {
    Scripted,
    Spontaneous,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Scripted => "scripted",
            Label::Spontaneous => "spontaneous",
        }
    }

    /// Parse a direct label string, case-insensitive.
    pub fn parse(s: &str) -> Option<Label> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("scripted") {
            Some(Label::Scripted)
        } else if t.eq_ignore_ascii_case("spontaneous") {
            Some(Label::Spontaneous)
        } else {
            None
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One audio document with its resolved label and metadata.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EpisodeRecord {
    pub episode_id: String,
    /// Path to the audio file; absent when features are precomputed.
    pub audio_path: Option<String>,
    /// Path to precomputed per-snippet feature files for this episode.
    pub feature_path: Option<String>,
    pub label: Label,
    /// Lowercase language name.
    pub language: String,
    pub category: String,
    /// Original format string; empty when the row carried a direct label.
    pub format: String,
}

/// What a format string maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MappedLabel {
    Scripted,
    Spontaneous,
    /// The format cannot be trusted as either class; rows are dropped.
    Ambiguous,
}

/// Translation from corpus-specific format/style names to classes.
///
/// Keys are matched case-insensitively on the trimmed format string.
#[derive(Debug, Clone, Default)]
pub struct LabelMapping {
    entries: BTreeMap<String, MappedLabel>,
}

impl LabelMapping {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert a format mapping. Returns false if the format was already
    /// present (the first entry wins; callers treat this as a config error).
    pub fn insert(&mut self, format: &str, label: MappedLabel) -> bool {
        let key = format.trim().to_ascii_lowercase();
        if self.entries.contains_key(&key) {
            return false;
        }
        self.entries.insert(key, label);
        true
    }

    pub fn lookup(&self, format: &str) -> Option<MappedLabel> {
        self.entries.get(&format.trim().to_ascii_lowercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The default podcast format mapping used when no config is supplied.
    pub fn podcast_defaults() -> Self {
        let mut m = Self::new();
        for f in ["Scripted narrative", "Scripted non-fiction"] {
            m.insert(f, MappedLabel::Scripted);
        }
        for f in ["Blabbercast", "Discussion", "Improv", "Call-ins"] {
            m.insert(f, MappedLabel::Spontaneous);
        }
        for f in ["Interview", "Soundscape"] {
            m.insert(f, MappedLabel::Ambiguous);
        }
        m
    }
}

/// One parsed manifest row before label resolution.
#[derive(Debug, Clone, Default)]
pub struct ManifestRow {
    pub episode_id: String,
    pub language: String,
    pub label: Option<String>,
    pub format: Option<String>,
    pub category: Option<String>,
    pub audio_path: Option<String>,
    pub feature_path: Option<String>,
}

/// Outcome of resolving one row against a mapping.
#[derive(Debug, Clone, PartialEq)]
pub enum Resolved {
    Record(EpisodeRecord),
    /// Format mapped to ambiguous; the row is dropped and counted.
    DroppedAmbiguous,
    Error(RowError),
}

/// Per-row resolution failure.
#[derive(Debug, Clone, PartialEq)]
pub enum RowError {
    /// `label` column value was not one of the two classes.
    BadLabel { episode_id: String, value: String },
    /// No direct label and the format has no mapping entry.
    UnknownFormat { episode_id: String, format: String },
    /// Neither a label nor a format present.
    MissingLabel { episode_id: String },
    /// `episode_id` column empty.
    MissingId,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowError::BadLabel { episode_id, value } => {
                write!(f, "episode `{episode_id}`: unrecognized label `{value}`")
            }
            RowError::UnknownFormat { episode_id, format } => {
                write!(f, "episode `{episode_id}`: format `{format}` has no label mapping")
            }
            RowError::MissingLabel { episode_id } => {
                write!(f, "episode `{episode_id}`: row has neither label nor format")
            }
            RowError::MissingId => f.write_str("row has an empty episode_id"),
        }
    }
}

/// Resolve one manifest row to a record. A direct `label` value wins over
/// the format mapping; rows whose format maps to ambiguous are dropped.
pub fn resolve_row(row: &ManifestRow, mapping: &LabelMapping) -> Resolved {
    if row.episode_id.trim().is_empty() {
        return Resolved::Error(RowError::MissingId);
    }
    let label = if let Some(direct) = row.label.as_deref().filter(|s| !s.trim().is_empty()) {
        match Label::parse(direct) {
            Some(l) => l,
            None => {
                return Resolved::Error(RowError::BadLabel {
                    episode_id: row.episode_id.clone(),
                    value: direct.trim().to_owned(),
                })
            }
        }
    } else if let Some(format) = row.format.as_deref().filter(|s| !s.trim().is_empty()) {
        match mapping.lookup(format) {
            Some(MappedLabel::Scripted) => Label::Scripted,
            Some(MappedLabel::Spontaneous) => Label::Spontaneous,
            Some(MappedLabel::Ambiguous) => return Resolved::DroppedAmbiguous,
            None => {
                return Resolved::Error(RowError::UnknownFormat {
                    episode_id: row.episode_id.clone(),
                    format: format.trim().to_owned(),
                })
            }
        }
    } else {
        return Resolved::Error(RowError::MissingLabel {
            episode_id: row.episode_id.clone(),
        });
    };
    Resolved::Record(EpisodeRecord {
        episode_id: row.episode_id.trim().to_owned(),
        audio_path: row.audio_path.clone().filter(|s| !s.is_empty()),
        feature_path: row.feature_path.clone().filter(|s| !s.is_empty()),
        label,
        language: normalize_language(row.language.as_str()),
        category: row.category.clone().unwrap_or_default(),
        format: row.format.clone().unwrap_or_default(),
    })
}

/// Lowercase-normalize a language name.
pub fn normalize_language(s: &str) -> String {
    s.trim().to_ascii_lowercase()
}

/// Assignment of every episode to one of `k` folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    pub k: usize,
    assignment: BTreeMap<String, usize>,
}

impl FoldAssignment {
    pub fn fold_of(&self, episode_id: &str) -> Option<usize> {
        self.assignment.get(episode_id).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Iterate `(episode_id, fold)` in episode-id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.assignment.iter().map(|(id, f)| (id.as_str(), *f))
    }

    /// Rebuild from stored pairs, validating fold bounds and uniqueness.
    pub fn from_pairs(k: usize, pairs: impl IntoIterator<Item = (String, usize)>) -> Result<Self, SplitError> {
        let mut assignment = BTreeMap::new();
        for (id, fold) in pairs {
            if fold >= k {
                return Err(SplitError::FoldOutOfRange { fold, k });
            }
            if assignment.insert(id.clone(), fold).is_some() {
                return Err(SplitError::DuplicateEpisode(id));
            }
        }
        Ok(FoldAssignment { k, assignment })
    }
}

/// Errors from fold splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitError {
    TooFewFolds(usize),
    NotEnoughEpisodes { k: usize, n: usize },
    DuplicateEpisode(String),
    FoldOutOfRange { fold: usize, k: usize },
}

impl fmt::Display for SplitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitError::TooFewFolds(k) => write!(f, "fold count must be at least 2, got {k}"),
            SplitError::NotEnoughEpisodes { k, n } => {
                write!(f, "cannot split {n} episodes into {k} folds")
            }
            SplitError::DuplicateEpisode(id) => write!(f, "duplicate episode_id `{id}`"),
            SplitError::FoldOutOfRange { fold, k } => {
                write!(f, "fold index {fold} out of range for k={k}")
            }
        }
    }
}

impl core::error::Error for SplitError {}

/// Episode-level stratified k-fold split.
///
/// Episodes are grouped by the joint (category, format, language) stratum,
/// sorted by id, shuffled with a seeded stream, and dealt round-robin so
/// each stratum's fold sizes differ by at most one. Strata with a single
/// episode instead go to the currently smallest fold. Deterministic for a
/// fixed seed and independent of manifest row order.
pub fn stratified_kfold(
    records: &[EpisodeRecord],
    k: usize,
    seed: u64,
) -> Result<FoldAssignment, SplitError> {
    if k < 2 {
        return Err(SplitError::TooFewFolds(k));
    }
    if records.len() < k {
        return Err(SplitError::NotEnoughEpisodes { k, n: records.len() });
    }
    let mut strata: BTreeMap<(&str, &str, &str), Vec<&str>> = BTreeMap::new();
    for r in records {
        let key = (r.category.as_str(), r.format.as_str(), r.language.as_str());
        strata.entry(key).or_default().push(r.episode_id.as_str());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment: BTreeMap<String, usize> = BTreeMap::new();
    let mut fold_totals = alloc::vec![0usize; k];
    let mut cursor = 0usize;
    for ids in strata.values_mut() {
        ids.sort_unstable();
        ids.shuffle(&mut rng);
        if ids.len() == 1 {
            let fold = fold_totals
                .iter()
                .enumerate()
                .min_by_key(|(i, n)| (**n, *i))
                .map(|(i, _)| i)
                .unwrap_or(0);
            if assignment.insert(ids[0].to_owned(), fold).is_some() {
                return Err(SplitError::DuplicateEpisode(ids[0].to_owned()));
            }
            fold_totals[fold] += 1;
            continue;
        }
        for (offset, id) in ids.iter().enumerate() {
            let fold = (cursor + offset) % k;
            if assignment.insert((*id).to_owned(), fold).is_some() {
                return Err(SplitError::DuplicateEpisode((*id).to_owned()));
            }
            fold_totals[fold] += 1;
        }
        cursor = (cursor + ids.len()) % k;
    }
    Ok(FoldAssignment { k, assignment })
}

/// Language-family grouping rules plus excluded languages.
#[derive(Debug, Clone, Default)]
pub struct LanguageGroup {
    rules: BTreeMap<String, String>,
    exclusions: BTreeSet<String>,
}

/// Result of grouping a language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grouped {
    Group(String),
    Excluded,
}

impl LanguageGroup {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a grouping rule. Compound names containing `/` register every
    /// spelling, so `filipino/tagalog` accepts either half or the compound.
    pub fn add_rule(&mut self, language: &str, group: &str) {
        let group = normalize_language(group);
        let language = normalize_language(language);
        if language.contains('/') {
            for part in language.split('/') {
                if !part.is_empty() {
                    self.rules.insert(part.to_owned(), group.clone());
                }
            }
        }
        self.rules.insert(language, group);
    }

    pub fn exclude(&mut self, language: &str) {
        self.exclusions.insert(normalize_language(language));
    }

    /// The language-family grouping used by default: Indo-Aryan, Dravidian
    /// and Malayo-Polynesian pools, with Catalan excluded for sample size.
    pub fn default_families() -> Self {
        let mut g = Self::new();
        g.add_rule("bengali", "indo-aryan");
        g.add_rule("hindi", "indo-aryan");
        g.add_rule("telugu", "dravidian");
        g.add_rule("tamil", "dravidian");
        g.add_rule("filipino/tagalog", "malayo-polynesian");
        g.add_rule("indonesian", "malayo-polynesian");
        g.exclude("catalan");
        g
    }
}

/// Map a language to its evaluation group or flag it as excluded.
/// Ungrouped languages map to themselves, which makes the operation
/// idempotent: grouping a group name returns it unchanged.
pub fn group_language(language: &str, rules: &LanguageGroup) -> Grouped {
    let lang = normalize_language(language);
    if rules.exclusions.contains(&lang) {
        return Grouped::Excluded;
    }
    match rules.rules.get(&lang) {
        Some(group) => Grouped::Group(group.clone()),
        None => Grouped::Group(lang),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::ToString;

    fn row(id: &str, format: Option<&str>, label: Option<&str>) -> ManifestRow {
        ManifestRow {
            episode_id: id.to_string(),
            language: "english".to_string(),
            label: label.map(|s| s.to_string()),
            format: format.map(|s| s.to_string()),
            ..Default::default()
        }
    }

    #[test]
    fn format_mapping_resolves_labels() {
        let m = LabelMapping::podcast_defaults();
        match resolve_row(&row("a", Some("Discussion"), None), &m) {
            Resolved::Record(r) => assert_eq!(r.label, Label::Spontaneous),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            resolve_row(&row("b", Some("Interview"), None), &m),
            Resolved::DroppedAmbiguous
        );
    }

    #[test]
    fn direct_label_wins_over_format() {
        let m = LabelMapping::podcast_defaults();
        match resolve_row(&row("a", None, Some("scripted")), &m) {
            Resolved::Record(r) => assert_eq!(r.label, Label::Scripted),
            other => panic!("unexpected {other:?}"),
        }
        // Even when a contradictory format is present.
        match resolve_row(&row("a", Some("Discussion"), Some("Scripted")), &m) {
            Resolved::Record(r) => assert_eq!(r.label, Label::Scripted),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_format_reports_the_format() {
        let m = LabelMapping::podcast_defaults();
        match resolve_row(&row("a", Some("Radio play"), None), &m) {
            Resolved::Error(RowError::UnknownFormat { format, .. }) => {
                assert_eq!(format, "Radio play")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    fn episodes(spec: &[(&str, usize)]) -> Vec<EpisodeRecord> {
        let mut out = Vec::new();
        for (stratum, n) in spec {
            for i in 0..*n {
                out.push(EpisodeRecord {
                    episode_id: format!("{stratum}-{i:03}"),
                    audio_path: None,
                    feature_path: None,
                    label: Label::Scripted,
                    language: stratum.to_string(),
                    category: "cat".to_string(),
                    format: "fmt".to_string(),
                });
            }
        }
        out
    }

    #[test]
    fn two_strata_of_five_split_evenly() {
        let records = episodes(&[("a", 5), ("b", 5)]);
        let folds = stratified_kfold(&records, 5, 7).unwrap();
        let mut per_fold = [0usize; 5];
        for (_, f) in folds.iter() {
            per_fold[f] += 1;
        }
        assert_eq!(per_fold, [2, 2, 2, 2, 2]);
        // one per stratum per fold
        for stratum in ["a", "b"] {
            let mut seen = [0usize; 5];
            for (id, f) in folds.iter() {
                if id.starts_with(stratum) {
                    seen[f] += 1;
                }
            }
            assert_eq!(seen, [1, 1, 1, 1, 1]);
        }
    }

    #[test]
    fn seven_episodes_five_folds_pigeonhole() {
        let records = episodes(&[("a", 7)]);
        let folds = stratified_kfold(&records, 5, 3).unwrap();
        let mut sizes = [0usize; 5];
        for (_, f) in folds.iter() {
            sizes[f] += 1;
        }
        let mut sorted = sizes;
        sorted.sort_unstable();
        assert_eq!(sorted, [1, 1, 1, 2, 2]);
    }

    #[test]
    fn splitting_is_deterministic_and_order_independent() {
        let mut records = episodes(&[("a", 9), ("b", 4), ("c", 1)]);
        let first = stratified_kfold(&records, 5, 42).unwrap();
        let second = stratified_kfold(&records, 5, 42).unwrap();
        assert_eq!(first, second);
        records.reverse();
        let third = stratified_kfold(&records, 5, 42).unwrap();
        assert_eq!(first, third);
        let other_seed = stratified_kfold(&records, 5, 43).unwrap();
        assert_ne!(first, other_seed);
    }

    #[test]
    fn too_many_folds_is_an_error() {
        let records = episodes(&[("a", 3)]);
        assert!(matches!(
            stratified_kfold(&records, 5, 0),
            Err(SplitError::NotEnoughEpisodes { .. })
        ));
    }

    #[test]
    fn language_grouping_examples() {
        let rules = LanguageGroup::default_families();
        assert_eq!(
            group_language("hindi", &rules),
            Grouped::Group("indo-aryan".to_string())
        );
        assert_eq!(group_language("catalan", &rules), Grouped::Excluded);
        assert_eq!(
            group_language("swedish", &rules),
            Grouped::Group("swedish".to_string())
        );
        assert_eq!(
            group_language("tagalog", &rules),
            Grouped::Group("malayo-polynesian".to_string())
        );
        assert_eq!(
            group_language("filipino/tagalog", &rules),
            Grouped::Group("malayo-polynesian".to_string())
        );
        // Idempotence: a group name passes through unchanged.
        assert_eq!(
            group_language("indo-aryan", &rules),
            Grouped::Group("indo-aryan".to_string())
        );
    }
}

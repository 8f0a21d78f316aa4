//! Episode-level aggregation, ranking metrics and cross-validation reports.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::corpus::{group_language, Grouped, Label, LanguageGroup};
use crate::fmath;

/// How per-snippet scores become one episode score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Aggregation {
    #[default]
    Median,
    Mean,
}

impl Aggregation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Aggregation::Median => "median",
            Aggregation::Mean => "mean",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "median" => Some(Aggregation::Median),
            "mean" => Some(Aggregation::Mean),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    EmptyScores,
    /// AUC needs at least one example of each class.
    SingleClass,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::EmptyScores => f.write_str("cannot aggregate an empty score list"),
            EvalError::SingleClass => f.write_str("undefined AUC: only one class present"),
        }
    }
}

impl core::error::Error for EvalError {}

/// Reduce snippet scores to an episode score. The median of an even-length
/// list is the mean of the two middle values.
pub fn aggregate(scores: &[f32], mode: Aggregation) -> Result<f64, EvalError> {
    if scores.is_empty() {
        return Err(EvalError::EmptyScores);
    }
    Ok(match mode {
        Aggregation::Mean => scores.iter().map(|&s| s as f64).sum::<f64>() / scores.len() as f64,
        Aggregation::Median => {
            let mut v: Vec<f64> = scores.iter().map(|&s| s as f64).collect();
            v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("NaN score"));
            let n = v.len();
            if n % 2 == 1 {
                v[n / 2]
            } else {
                (v[n / 2 - 1] + v[n / 2]) / 2.0
            }
        }
    })
}

/// Rank-based (Mann-Whitney) ROC AUC with half credit for tied scores.
/// The positive class is scripted.
pub fn roc_auc(labels: &[Label], scores: &[f64]) -> Result<f64, EvalError> {
    assert_eq!(labels.len(), scores.len());
    let n_pos = labels.iter().filter(|l| **l == Label::Scripted).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(EvalError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("NaN score"));
    // Average ranks over tie groups (ranks are 1-based).
    let mut rank_sum_pos = 0.0f64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let avg_rank = (i + j + 2) as f64 / 2.0;
        for &idx in &order[i..=j] {
            if labels[idx] == Label::Scripted {
                rank_sum_pos += avg_rank;
            }
        }
        i = j + 1;
    }
    let u = rank_sum_pos - (n_pos * (n_pos + 1)) as f64 / 2.0;
    Ok(u / (n_pos as f64 * n_neg as f64))
}

/// Per-class F1 at a fixed threshold; prediction is scripted iff
/// `score >= threshold`. A class with zero precision+recall gets F1 = 0.
pub fn f1_per_class(labels: &[Label], scores: &[f64], threshold: f64) -> (f64, f64) {
    assert_eq!(labels.len(), scores.len());
    let mut tp_s = 0usize;
    let mut fp_s = 0usize;
    let mut fn_s = 0usize;
    let mut tn_s = 0usize;
    for (l, s) in labels.iter().zip(scores) {
        let pred_scripted = *s >= threshold;
        match (l, pred_scripted) {
            (Label::Scripted, true) => tp_s += 1,
            (Label::Scripted, false) => fn_s += 1,
            (Label::Spontaneous, true) => fp_s += 1,
            (Label::Spontaneous, false) => tn_s += 1,
        }
    }
    let f1 = |tp: usize, fp: usize, fnn: usize| -> f64 {
        let denom = 2 * tp + fp + fnn;
        if denom == 0 {
            0.0
        } else {
            2.0 * tp as f64 / denom as f64
        }
    };
    (f1(tp_s, fp_s, fn_s), f1(tn_s, fn_s, fp_s))
}

/// Default decision threshold.
pub const THRESHOLD: f64 = 0.5;

/// One evaluated episode.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PredictionRecord {
    pub episode_id: String,
    pub fold: usize,
    pub label: Label,
    pub language: String,
    pub snippet_scores: Vec<f32>,
    pub episode_score: f64,
}

impl PredictionRecord {
    pub fn new(
        episode_id: String,
        fold: usize,
        label: Label,
        language: String,
        snippet_scores: Vec<f32>,
        mode: Aggregation,
    ) -> Result<Self, EvalError> {
        let episode_score = aggregate(&snippet_scores, mode)?;
        Ok(PredictionRecord {
            episode_id,
            fold,
            label,
            language,
            snippet_scores,
            episode_score,
        })
    }
}

/// Metrics of a single fold.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FoldMetrics {
    pub fold: usize,
    pub n_episodes: usize,
    pub auc: Option<f64>,
    pub f1_scripted: f64,
    pub f1_spontaneous: f64,
}

/// Mean and population standard deviation across folds.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SummaryStat {
    pub mean: f64,
    pub std: f64,
}

fn summarize(values: impl Iterator<Item = f64> + Clone) -> Option<SummaryStat> {
    let n = values.clone().count();
    if n == 0 {
        return None;
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
    Some(SummaryStat { mean, std: fmath::sqrt64(var) })
}

/// AUC of one language group, per fold and pooled over folds.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LanguageAuc {
    pub group: String,
    pub n_episodes: usize,
    /// Per-fold AUC; `None` where the fold holds a single class.
    pub per_fold: Vec<Option<f64>>,
    /// Mean over the folds where AUC is defined.
    pub fold_mean: Option<f64>,
    /// AUC over all of the group's episodes pooled across folds.
    pub pooled: Option<f64>,
}

/// Histogram of episode scores by true class, fixed 0.05-wide bins.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HistogramBin {
    pub bin_start: f64,
    pub count_scripted: usize,
    pub count_spontaneous: usize,
}

/// Histogram bin width for score distributions.
pub const HISTOGRAM_BIN_WIDTH: f64 = 0.05;

/// Full evaluation report for one feature model.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricsReport {
    pub aggregation: Aggregation,
    pub threshold: f64,
    pub folds: Vec<FoldMetrics>,
    pub auc: Option<SummaryStat>,
    pub f1_scripted: Option<SummaryStat>,
    pub f1_spontaneous: Option<SummaryStat>,
    /// AUC over all episodes pooled, ignoring folds.
    pub pooled_auc: Option<f64>,
    pub per_language: Vec<LanguageAuc>,
    pub histogram: Vec<HistogramBin>,
}

/// Build the cross-validated report from per-episode predictions.
///
/// Per-language tables apply the grouping rules first and drop excluded
/// languages; both the per-fold mean and the pooled AUC are emitted for
/// each group.
pub fn cross_val_report(
    records: &[PredictionRecord],
    k: usize,
    rules: &LanguageGroup,
    aggregation: Aggregation,
) -> MetricsReport {
    let mut folds = Vec::with_capacity(k);
    for fold in 0..k {
        let idx: Vec<usize> = (0..records.len()).filter(|&i| records[i].fold == fold).collect();
        let labels: Vec<Label> = idx.iter().map(|&i| records[i].label).collect();
        let scores: Vec<f64> = idx.iter().map(|&i| records[i].episode_score).collect();
        let (f1_s, f1_sp) = f1_per_class(&labels, &scores, THRESHOLD);
        folds.push(FoldMetrics {
            fold,
            n_episodes: idx.len(),
            auc: roc_auc(&labels, &scores).ok(),
            f1_scripted: f1_s,
            f1_spontaneous: f1_sp,
        });
    }

    let auc = summarize(folds.iter().filter_map(|f| f.auc));
    let f1_scripted = summarize(folds.iter().map(|f| f.f1_scripted));
    let f1_spontaneous = summarize(folds.iter().map(|f| f.f1_spontaneous));

    let all_labels: Vec<Label> = records.iter().map(|r| r.label).collect();
    let all_scores: Vec<f64> = records.iter().map(|r| r.episode_score).collect();
    let pooled_auc = roc_auc(&all_labels, &all_scores).ok();

    MetricsReport {
        aggregation,
        threshold: THRESHOLD,
        folds,
        auc,
        f1_scripted,
        f1_spontaneous,
        pooled_auc,
        per_language: per_language_auc(records, k, rules),
        histogram: score_histogram(records),
    }
}

/// Per-language-group AUC table.
pub fn per_language_auc(records: &[PredictionRecord], k: usize, rules: &LanguageGroup) -> Vec<LanguageAuc> {
    let mut groups: alloc::collections::BTreeMap<String, Vec<usize>> = alloc::collections::BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        match group_language(&r.language, rules) {
            Grouped::Group(g) => groups.entry(g).or_default().push(i),
            Grouped::Excluded => {}
        }
    }
    groups
        .into_iter()
        .map(|(group, idx)| {
            let mut per_fold = Vec::with_capacity(k);
            for fold in 0..k {
                let fold_idx: Vec<usize> = idx.iter().copied().filter(|&i| records[i].fold == fold).collect();
                let labels: Vec<Label> = fold_idx.iter().map(|&i| records[i].label).collect();
                let scores: Vec<f64> = fold_idx.iter().map(|&i| records[i].episode_score).collect();
                per_fold.push(roc_auc(&labels, &scores).ok());
            }
            let fold_mean = summarize(per_fold.iter().flatten().copied()).map(|s| s.mean);
            let labels: Vec<Label> = idx.iter().map(|&i| records[i].label).collect();
            let scores: Vec<f64> = idx.iter().map(|&i| records[i].episode_score).collect();
            LanguageAuc {
                group,
                n_episodes: idx.len(),
                per_fold,
                fold_mean,
                pooled: roc_auc(&labels, &scores).ok(),
            }
        })
        .collect()
}

/// Episode-score histogram by true class over [0, 1] in 0.05 bins.
pub fn score_histogram(records: &[PredictionRecord]) -> Vec<HistogramBin> {
    let n_bins = (1.0 / HISTOGRAM_BIN_WIDTH) as usize;
    let mut bins: Vec<HistogramBin> = (0..n_bins)
        .map(|i| HistogramBin {
            bin_start: i as f64 * HISTOGRAM_BIN_WIDTH,
            count_scripted: 0,
            count_spontaneous: 0,
        })
        .collect();
    for r in records {
        let bin = ((r.episode_score / HISTOGRAM_BIN_WIDTH) as usize).min(n_bins - 1);
        match r.label {
            Label::Scripted => bins[bin].count_scripted += 1,
            Label::Spontaneous => bins[bin].count_spontaneous += 1,
        }
    }
    bins
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::ToString;

    #[test]
    fn median_examples() {
        assert_eq!(aggregate(&[0.2, 0.9, 0.4], Aggregation::Median).unwrap(), 0.4f32 as f64);
        let even = aggregate(&[0.1, 0.3], Aggregation::Median).unwrap();
        assert!((even - 0.2).abs() < 1e-7);
        let mean = aggregate(&[0.1, 0.3], Aggregation::Mean).unwrap();
        assert!((mean - 0.2).abs() < 1e-7);
        assert!(aggregate(&[], Aggregation::Median).is_err());
    }

    #[test]
    fn aggregate_stays_within_bounds() {
        let scores = [0.11f32, 0.92, 0.35, 0.5, 0.27];
        for mode in [Aggregation::Median, Aggregation::Mean] {
            let v = aggregate(&scores, mode).unwrap();
            assert!(v >= 0.11f32 as f64 && v <= 0.92f32 as f64);
        }
    }

    #[test]
    fn auc_perfect_ranking() {
        let labels = [Label::Scripted, Label::Spontaneous, Label::Scripted, Label::Spontaneous];
        let scores = [0.9, 0.1, 0.8, 0.4];
        assert_eq!(roc_auc(&labels, &scores).unwrap(), 1.0);
    }

    #[test]
    fn auc_tie_gets_half_credit() {
        let labels = [Label::Scripted, Label::Spontaneous];
        let scores = [0.5, 0.5];
        assert_eq!(roc_auc(&labels, &scores).unwrap(), 0.5);
    }

    #[test]
    fn auc_single_class_is_undefined() {
        let labels = [Label::Scripted, Label::Scripted];
        assert_eq!(roc_auc(&labels, &[0.1, 0.9]), Err(EvalError::SingleClass));
    }

    /// Brute force over all positive/negative pairs with 0.5 tie credit.
    fn pairwise_auc(labels: &[Label], scores: &[f64]) -> f64 {
        let mut wins = 0.0f64;
        let mut pairs = 0.0f64;
        for (i, li) in labels.iter().enumerate() {
            if *li != Label::Scripted {
                continue;
            }
            for (j, lj) in labels.iter().enumerate() {
                if *lj != Label::Spontaneous {
                    continue;
                }
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    #[test]
    fn auc_matches_pairwise_oracle_on_random_cases() {
        // Deterministic xorshift so the cases are reproducible.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for case in 0..200 {
            let n = 2 + (next() % 19) as usize;
            let mut labels = Vec::with_capacity(n);
            let mut scores = Vec::with_capacity(n);
            for _ in 0..n {
                labels.push(if next() % 2 == 0 { Label::Scripted } else { Label::Spontaneous });
                // Coarse grid to provoke ties.
                scores.push((next() % 8) as f64 / 8.0);
            }
            let has_both = labels.contains(&Label::Scripted) && labels.contains(&Label::Spontaneous);
            if !has_both {
                continue;
            }
            let fast = roc_auc(&labels, &scores).unwrap();
            let brute = pairwise_auc(&labels, &scores);
            assert!(
                (fast - brute).abs() < 1e-12,
                "case {case}: rank {fast} vs brute {brute}"
            );
        }
    }

    #[test]
    fn auc_invariant_under_monotone_transform() {
        let labels = [
            Label::Scripted,
            Label::Spontaneous,
            Label::Scripted,
            Label::Spontaneous,
            Label::Spontaneous,
        ];
        let scores = [0.8, 0.3, 0.55, 0.55, 0.1];
        let base = roc_auc(&labels, &scores).unwrap();
        let squashed: Vec<f64> = scores.iter().map(|s| 1.0 / (1.0 + (-4.0 * s).exp())).collect();
        assert_eq!(base, roc_auc(&labels, &squashed).unwrap());
    }

    #[test]
    fn f1_hand_arithmetic() {
        let labels = [Label::Scripted, Label::Scripted, Label::Spontaneous, Label::Spontaneous];
        let scores = [0.9, 0.2, 0.1, 0.1];
        let (f1_s, f1_sp) = f1_per_class(&labels, &scores, 0.5);
        assert!((f1_s - 2.0 / 3.0).abs() < 1e-12);
        // spontaneous: tp=2, fp=1 (the missed scripted), fn=0 -> 4/5
        assert!((f1_sp - 0.8).abs() < 1e-12);
    }

    #[test]
    fn f1_all_correct() {
        let labels = [Label::Scripted, Label::Spontaneous];
        let scores = [0.9, 0.1];
        assert_eq!(f1_per_class(&labels, &scores, 0.5), (1.0, 1.0));
    }

    /// Direct confusion-matrix oracle for the F1 computation.
    fn f1_oracle(labels: &[Label], scores: &[f64]) -> (f64, f64) {
        let count = |target: Label, pred_target: bool| -> usize {
            labels
                .iter()
                .zip(scores)
                .filter(|(l, s)| {
                    let predicted_scripted = **s >= 0.5;
                    let predicted = if predicted_scripted { Label::Scripted } else { Label::Spontaneous };
                    (**l == target) == pred_target && predicted == target
                })
                .count()
        };
        let per_class = |class: Label| -> f64 {
            let tp = count(class, true);
            let predicted: usize = labels
                .iter()
                .zip(scores)
                .filter(|(_, s)| {
                    let p = if **s >= 0.5 { Label::Scripted } else { Label::Spontaneous };
                    p == class
                })
                .count();
            let actual = labels.iter().filter(|l| **l == class).count();
            if predicted + actual == 0 {
                return 0.0;
            }
            let precision = if predicted == 0 { 0.0 } else { tp as f64 / predicted as f64 };
            let recall = if actual == 0 { 0.0 } else { tp as f64 / actual as f64 };
            if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            }
        };
        (per_class(Label::Scripted), per_class(Label::Spontaneous))
    }

    #[test]
    fn f1_matches_counting_oracle() {
        let mut state = 0xDEADBEEFu64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let labels: Vec<Label> = (0..50)
            .map(|_| if next() % 3 == 0 { Label::Scripted } else { Label::Spontaneous })
            .collect();
        let scores: Vec<f64> = (0..50).map(|_| (next() % 100) as f64 / 100.0).collect();
        let got = f1_per_class(&labels, &scores, 0.5);
        let want = f1_oracle(&labels, &scores);
        assert!((got.0 - want.0).abs() < 1e-12);
        assert!((got.1 - want.1).abs() < 1e-12);
    }

    fn prediction(id: usize, fold: usize, label: Label, language: &str, score: f64) -> PredictionRecord {
        PredictionRecord {
            episode_id: format!("ep-{id}"),
            fold,
            label,
            language: language.to_string(),
            snippet_scores: vec![score as f32],
            episode_score: score,
        }
    }

    #[test]
    fn cross_fold_summary_examples() {
        // Five folds each with a perfect pair -> AUC 0.9-free check of the
        // mean/std math using two folds with known AUCs 1.0 and 0.8.
        let mut records = Vec::new();
        // fold 0: perfectly ranked
        records.push(prediction(0, 0, Label::Scripted, "english", 0.9));
        records.push(prediction(1, 0, Label::Spontaneous, "english", 0.1));
        // fold 1: AUC 0.8 needs 5 pairs; use 1 pos vs 5 neg with one inversion
        records.push(prediction(2, 1, Label::Scripted, "english", 0.6));
        for (i, s) in [0.2, 0.3, 0.4, 0.5, 0.7].iter().enumerate() {
            records.push(prediction(3 + i, 1, Label::Spontaneous, "english", *s));
        }
        let report = cross_val_report(&records, 2, &LanguageGroup::default_families(), Aggregation::Median);
        let auc = report.auc.unwrap();
        assert!((auc.mean - 0.9).abs() < 1e-12);
        assert!((auc.std - 0.1).abs() < 1e-12);
    }

    #[test]
    fn constant_folds_have_zero_std() {
        let mut records = Vec::new();
        for fold in 0..5 {
            records.push(prediction(fold * 2, fold, Label::Scripted, "english", 0.9));
            records.push(prediction(fold * 2 + 1, fold, Label::Spontaneous, "english", 0.1));
        }
        let report = cross_val_report(&records, 5, &LanguageGroup::default_families(), Aggregation::Median);
        let auc = report.auc.unwrap();
        assert_eq!(auc.mean, 1.0);
        assert_eq!(auc.std, 0.0);
    }

    #[test]
    fn per_language_grouping_merges_and_excludes() {
        let records = vec![
            prediction(0, 0, Label::Scripted, "hindi", 0.9),
            prediction(1, 0, Label::Spontaneous, "bengali", 0.2),
            prediction(2, 0, Label::Scripted, "catalan", 0.8),
            prediction(3, 0, Label::Spontaneous, "catalan", 0.1),
        ];
        let table = per_language_auc(&records, 1, &LanguageGroup::default_families());
        assert_eq!(table.len(), 1);
        assert_eq!(table[0].group, "indo-aryan");
        assert_eq!(table[0].n_episodes, 2);
        assert_eq!(table[0].pooled, Some(1.0));
    }

    #[test]
    fn pooled_single_language_equals_overall() {
        let records = vec![
            prediction(0, 0, Label::Scripted, "swedish", 0.9),
            prediction(1, 0, Label::Spontaneous, "swedish", 0.4),
            prediction(2, 1, Label::Scripted, "swedish", 0.7),
            prediction(3, 1, Label::Spontaneous, "swedish", 0.8),
        ];
        let report = cross_val_report(&records, 2, &LanguageGroup::default_families(), Aggregation::Median);
        assert_eq!(report.per_language.len(), 1);
        assert_eq!(report.per_language[0].pooled, report.pooled_auc);
    }

    #[test]
    fn histogram_buckets_scores_by_class() {
        let records = vec![
            prediction(0, 0, Label::Scripted, "english", 0.97),
            prediction(1, 0, Label::Scripted, "english", 1.0),
            prediction(2, 0, Label::Spontaneous, "english", 0.02),
        ];
        let bins = score_histogram(&records);
        assert_eq!(bins.len(), 20);
        assert_eq!(bins[19].count_scripted, 2);
        assert_eq!(bins[0].count_spontaneous, 1);
        let total: usize = bins.iter().map(|b| b.count_scripted + b.count_spontaneous).sum();
        assert_eq!(total, 3);
    }
}

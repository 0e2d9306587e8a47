//! Pixel-wise agreement between a predicted and a reference fluid mask.
//!
//! Undefined ratios (zero denominators) are `None` and are left out of any
//! average.

use crate::error::{Error, Result};
use crate::raster::BinaryMask;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn dice(&self) -> Option<f64> {
        ratio(2 * self.tp, 2 * self.tp + self.fp + self.fn_)
    }

    pub fn sensitivity(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn precision(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn scores(&self) -> Scores {
        Scores {
            dice: self.dice(),
            sensitivity: self.sensitivity(),
            precision: self.precision(),
        }
    }
}

impl std::ops::Add for ConfusionCounts {
    type Output = ConfusionCounts;

    fn add(self, o: Self) -> Self {
        ConfusionCounts {
            tp: self.tp + o.tp,
            fp: self.fp + o.fp,
            tn: self.tn + o.tn,
            fn_: self.fn_ + o.fn_,
        }
    }
}

impl std::iter::Sum for ConfusionCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ConfusionCounts::default(), |a, b| a + b)
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn confusion(pred: &BinaryMask, gt: &BinaryMask) -> Result<ConfusionCounts> {
    if !pred.same_shape(gt) {
        return Err(Error::invalid(format!(
            "prediction is {}x{} but ground truth is {}x{}",
            pred.width(),
            pred.height(),
            gt.width(),
            gt.height()
        )));
    }
    let mut c = ConfusionCounts::default();
    for (&p, &g) in pred.data().iter().zip(gt.data()) {
        match (p, g) {
            (1, 1) => c.tp += 1,
            (1, _) => c.fp += 1,
            (_, 1) => c.fn_ += 1,
            _ => c.tn += 1,
        }
    }
    Ok(c)
}

pub fn dice(c: &ConfusionCounts) -> Option<f64> {
    c.dice()
}

pub fn sensitivity(c: &ConfusionCounts) -> Option<f64> {
    c.sensitivity()
}

pub fn precision(c: &ConfusionCounts) -> Option<f64> {
    c.precision()
}

/// Arithmetic mean of per-subject values.
pub fn aggregate(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("cannot average an empty list"));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Scores {
    pub dice: Option<f64>,
    pub sensitivity: Option<f64>,
    pub precision: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageMetrics {
    pub id: String,
    pub subject: String,
    pub counts: ConfusionCounts,
    pub scores: Scores,
}

/// Scores of the confusion counts pooled over all of a subject's images.
#[derive(Debug, Clone, PartialEq)]
pub struct SubjectMetrics {
    pub id: String,
    pub counts: ConfusionCounts,
    pub scores: Scores,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub per_image: Vec<ImageMetrics>,
    pub per_subject: Vec<SubjectMetrics>,
    /// Mean over subjects of each defined per-subject score.
    pub average: Scores,
}

impl MetricsReport {
    /// Builds a report from `(subject, image id, counts)` entries. Subjects
    /// appear in order of first occurrence.
    pub fn from_counts<I, S, T>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, T, ConfusionCounts)>,
        S: Into<String>,
        T: Into<String>,
    {
        let per_image: Vec<ImageMetrics> = entries
            .into_iter()
            .map(|(subject, id, counts)| ImageMetrics {
                id: id.into(),
                subject: subject.into(),
                counts,
                scores: counts.scores(),
            })
            .collect();

        let mut per_subject: Vec<SubjectMetrics> = Vec::new();
        for img in &per_image {
            match per_subject.iter_mut().find(|s| s.id == img.subject) {
                Some(s) => s.counts = s.counts + img.counts,
                None => per_subject.push(SubjectMetrics {
                    id: img.subject.clone(),
                    counts: img.counts,
                    scores: Scores::default(),
                }),
            }
        }
        for s in &mut per_subject {
            s.scores = s.counts.scores();
        }

        let mean_of = |pick: fn(&Scores) -> Option<f64>| {
            let defined: Vec<f64> = per_subject.iter().filter_map(|s| pick(&s.scores)).collect();
            aggregate(&defined).ok()
        };
        let average = Scores {
            dice: mean_of(|s| s.dice),
            sensitivity: mean_of(|s| s.sensitivity),
            precision: mean_of(|s| s.precision),
        };

        MetricsReport {
            per_image,
            per_subject,
            average,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn counts(tp: u64, fp: u64, tn: u64, fn_: u64) -> ConfusionCounts {
        ConfusionCounts { tp, fp, tn, fn_ }
    }

    #[test]
    fn ratio_examples() {
        assert!((dice(&counts(2, 1, 0, 1)).unwrap() - 0.6667).abs() < 5e-5);
        assert_eq!(dice(&counts(5, 0, 3, 0)), Some(1.0));
        assert_eq!(dice(&counts(0, 0, 7, 0)), None);
        assert_eq!(sensitivity(&counts(9, 0, 0, 1)), Some(0.9));
        assert_eq!(precision(&counts(3, 1, 0, 0)), Some(0.75));
        assert_eq!(sensitivity(&counts(0, 4, 2, 0)), None);
    }

    #[test]
    fn confusion_examples() {
        let gt = BinaryMask::new(3, 2, vec![1, 0, 1, 0, 0, 1]).unwrap();
        assert_eq!(confusion(&gt, &gt).unwrap(), counts(3, 0, 3, 0));
        let zeros = BinaryMask::zeros(2, 2).unwrap();
        let ones = BinaryMask::new(2, 2, vec![1; 4]).unwrap();
        assert_eq!(confusion(&zeros, &ones).unwrap(), counts(0, 0, 0, 4));
        assert!(confusion(&zeros, &gt).is_err());
    }

    #[test]
    fn aggregate_examples() {
        assert!((aggregate(&[83.17, 74.61, 84.85, 86.32]).unwrap() - 82.2375).abs() < 1e-9);
        assert_eq!(aggregate(&[90.59]).unwrap(), 90.59);
        assert!(aggregate(&[]).is_err());
    }

    #[test]
    fn report_pools_per_subject() {
        let report = MetricsReport::from_counts([
            ("s1", "a", counts(1, 1, 2, 0)),
            ("s1", "b", counts(3, 0, 1, 0)),
            ("s2", "c", counts(0, 0, 4, 0)),
            ("s2", "d", counts(2, 0, 2, 2)),
        ]);
        assert_eq!(report.per_subject.len(), 2);
        assert_eq!(report.per_subject[0].counts, counts(4, 1, 3, 0));
        let s1 = 8.0 / 9.0;
        let s2 = 4.0 / 6.0;
        assert!((report.average.dice.unwrap() - (s1 + s2) / 2.0).abs() < 1e-15);
        assert_eq!(report.per_image[2].scores.dice, None);
        assert_eq!(report.average.precision, Some(0.9));
    }

    fn arb_pair() -> impl Strategy<Value = (BinaryMask, BinaryMask)> {
        (1usize..20, 1usize..20).prop_flat_map(|(w, h)| {
            (
                prop::collection::vec(0u8..2, w * h),
                prop::collection::vec(0u8..2, w * h),
            )
                .prop_map(move |(a, b)| (BinaryMask::new(w, h, a).unwrap(), BinaryMask::new(w, h, b).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn metric_identities((p, g) in arb_pair()) {
            let c = confusion(&p, &g).unwrap();
            prop_assert_eq!(c.total(), p.len() as u64);
            let swapped = confusion(&g, &p).unwrap();
            prop_assert_eq!((swapped.fp, swapped.fn_), (c.fn_, c.fp));
            prop_assert_eq!(dice(&swapped), dice(&c));
            if let (Some(pr), Some(se)) = (c.precision(), c.sensitivity()) {
                if pr + se > 0.0 {
                    prop_assert!((c.dice().unwrap() - 2.0 * pr * se / (pr + se)).abs() < 1e-12);
                }
            }
            for v in [c.dice(), c.sensitivity(), c.precision()].into_iter().flatten() {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }
}

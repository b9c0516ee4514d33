//! Welfare and inequality metrics and the between-arm significance tests.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::emotion::Mode;
use crate::error::{Error, Result, StatsError};
use crate::preferences::SvoTrait;
use crate::society::{RoundRecord, SocietyPreset};

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn mean(values: &[f64]) -> Result<f64, StatsError> {
    if values.is_empty() {
        return Err(StatsError::Empty);
    }
    Ok(compensated_sum(values.iter().copied()) / values.len() as f64)
}

/// Which denominator a variance uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spread {
    /// Divide by n.
    Population,
    /// Divide by n - 1.
    Sample,
}

pub fn variance(values: &[f64], spread: Spread) -> Result<f64, StatsError> {
    let m = mean(values)?;
    let denom = match spread {
        Spread::Population => values.len() as f64,
        Spread::Sample => {
            if values.len() < 2 {
                return Err(StatsError::TooFew { needed: 2, got: values.len() });
            }
            (values.len() - 1) as f64
        }
    };
    Ok(compensated_sum(values.iter().map(|v| (v - m) * (v - m))) / denom)
}

pub fn std_dev(values: &[f64], spread: Spread) -> Result<f64, StatsError> {
    variance(values, spread).map(f64::sqrt)
}

/// Every agent plays exactly this many rounds per time step.
pub const ROUNDS_PER_STEP: f64 = 2.0;

/// Converts a per-round welfare into score per time step (both rounds summed).
pub fn per_step(welfare: f64) -> f64 {
    welfare * ROUNDS_PER_STEP
}

/// Individual welfare of `agent`: its mean score over every round in `records`.
pub fn individual_welfare<'a, I>(records: I, agent: u32) -> Result<f64, StatsError>
where
    I: IntoIterator<Item = &'a RoundRecord>,
{
    let mut halves = 0u64;
    let mut rounds = 0u64;
    for r in records {
        if r.proposer == agent {
            halves += u64::from(r.score_p.halves());
            rounds += 1;
        } else if r.responder == agent {
            halves += u64::from(r.score_r.halves());
            rounds += 1;
        }
    }
    if rounds == 0 {
        return Err(StatsError::UnknownAgent(agent));
    }
    Ok(halves as f64 / 2.0 / rounds as f64)
}

/// A subset of a society: everyone, or the agents sharing one SVO trait.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SampleLabel {
    All,
    Trait(SvoTrait),
}

impl SampleLabel {
    pub fn matches(self, svo: SvoTrait) -> bool {
        match self {
            SampleLabel::All => true,
            SampleLabel::Trait(t) => t == svo,
        }
    }
}

impl fmt::Display for SampleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleLabel::All => f.write_str("all"),
            SampleLabel::Trait(t) => f.write_str(t.label()),
        }
    }
}

impl std::str::FromStr for SampleLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            Ok(SampleLabel::All)
        } else {
            s.parse().map(SampleLabel::Trait)
        }
    }
}

impl Serialize for SampleLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SampleLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WelfareSample {
    pub society: SocietyPreset,
    pub label: SampleLabel,
    pub mode: Mode,
    pub values: Vec<f64>,
}

/// Mean of the sample's individual welfares.
pub fn collective_welfare(sample: &WelfareSample) -> Result<f64, StatsError> {
    mean(&sample.values)
}

/// Coefficient of variation with the population standard deviation.
pub fn cov(sample: &WelfareSample) -> Result<f64, StatsError> {
    cov_of(&sample.values, Spread::Population)
}

pub fn cov_of(values: &[f64], spread: Spread) -> Result<f64, StatsError> {
    let m = mean(values)?;
    if m == 0.0 {
        return Err(StatsError::ZeroMean);
    }
    Ok(std_dev(values, spread)? / m)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TTest {
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
}

/// Two-sided Welch (unequal-variance) t-test.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<TTest, StatsError> {
    for s in [a, b] {
        if s.len() < 2 {
            return Err(StatsError::TooFew { needed: 2, got: s.len() });
        }
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let qa = variance(a, Spread::Sample)? / na;
    let qb = variance(b, Spread::Sample)? / nb;
    let se2 = qa + qb;
    if se2 == 0.0 {
        return Err(StatsError::ZeroVariance);
    }
    let t = (mean(a)? - mean(b)?) / se2.sqrt();
    let df = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|_| StatsError::ZeroVariance)?;
    let p_value = (2.0 * dist.sf(t.abs())).min(1.0);
    Ok(TTest { t, df, p_value })
}

pub fn two_sample_t_test(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    welch_t_test(a, b).map(|t| t.p_value)
}

/// `|mean(a) - mean(b)|` over the pooled (n - 1 weighted) standard deviation.
/// Zero pooled variance is an error rather than an infinite effect.
pub fn cohens_d(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    for s in [a, b] {
        if s.len() < 2 {
            return Err(StatsError::TooFew { needed: 2, got: s.len() });
        }
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let pooled = ((na - 1.0) * variance(a, Spread::Sample)? + (nb - 1.0) * variance(b, Spread::Sample)?)
        / (na + nb - 2.0);
    if pooled == 0.0 {
        return Err(StatsError::ZeroVariance);
    }
    Ok((mean(a)? - mean(b)?).abs() / pooled.sqrt())
}

/// One agent's welfare within one repeat.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentWelfare {
    pub repeat: u32,
    pub agent: u32,
    pub svo: SvoTrait,
    pub rounds: u32,
    pub welfare: f64,
}

/// Per-agent welfare of one run (all repeats) of one society arm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WelfareTable {
    pub society: SocietyPreset,
    pub mode: Mode,
    pub repeats: u32,
    pub agents: Vec<AgentWelfare>,
}

impl WelfareTable {
    pub fn from_records<'a, I: IntoIterator<Item = &'a RoundRecord>>(records: I) -> Result<Self> {
        let mut acc = WelfareAccumulator::default();
        for r in records {
            acc.push(r)?;
        }
        acc.finish()
    }

    pub fn labels(&self) -> Vec<SampleLabel> {
        let mut labels = vec![SampleLabel::All];
        for t in SvoTrait::ALL {
            if self.agents.iter().any(|a| a.svo == t) {
                labels.push(SampleLabel::Trait(t));
            }
        }
        labels
    }

    /// Individual welfares pooled over every repeat.
    pub fn sample(&self, label: SampleLabel) -> WelfareSample {
        self.collect(label, None)
    }

    pub fn sample_for_repeat(&self, label: SampleLabel, repeat: u32) -> WelfareSample {
        self.collect(label, Some(repeat))
    }

    fn collect(&self, label: SampleLabel, repeat: Option<u32>) -> WelfareSample {
        WelfareSample {
            society: self.society,
            label,
            mode: self.mode,
            values: self
                .agents
                .iter()
                .filter(|a| label.matches(a.svo) && repeat.is_none_or(|r| a.repeat == r))
                .map(|a| a.welfare)
                .collect(),
        }
    }

    /// Agents per repeat in the sample.
    pub fn sample_size(&self, label: SampleLabel) -> usize {
        self.collect(label, None).values.len() / self.repeats.max(1) as usize
    }
}

/// Streaming construction of a [`WelfareTable`]. Scores are summed exactly
/// in half-points, so the result does not depend on record order.
#[derive(Debug, Default)]
pub struct WelfareAccumulator {
    arm: Option<(SocietyPreset, Mode)>,
    totals: BTreeMap<(u32, u32), (SvoTrait, u64, u32)>,
}

impl WelfareAccumulator {
    pub fn push(&mut self, r: &RoundRecord) -> Result<()> {
        match self.arm {
            None => self.arm = Some((r.society, r.mode)),
            Some(arm) if arm != (r.society, r.mode) => {
                return Err(Error::Mismatch(format!(
                    "records mix {}/{} with {}/{}",
                    arm.0, arm.1, r.society, r.mode
                )))
            }
            Some(_) => {}
        }
        for (agent, svo, score) in
            [(r.proposer, r.proposer_svo, r.score_p), (r.responder, r.responder_svo, r.score_r)]
        {
            let e = self.totals.entry((r.repeat, agent)).or_insert((svo, 0, 0));
            e.1 += u64::from(score.halves());
            e.2 += 1;
        }
        Ok(())
    }

    pub fn finish(self) -> Result<WelfareTable> {
        let (society, mode) = self.arm.ok_or(Error::Stats(StatsError::Empty))?;
        let repeats = self.totals.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let agents = self
            .totals
            .into_iter()
            .map(|((repeat, agent), (svo, halves, rounds))| AgentWelfare {
                repeat,
                agent,
                svo,
                rounds,
                welfare: halves as f64 / 2.0 / f64::from(rounds),
            })
            .collect();
        Ok(WelfareTable { society, mode, repeats, agents })
    }
}

/// Size, mean, population std and CoV of one sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub cov: f64,
}

impl SampleStats {
    pub fn of(values: &[f64]) -> Result<Self, StatsError> {
        Ok(SampleStats {
            n: values.len(),
            mean: mean(values)?,
            std: std_dev(values, Spread::Population)?,
            cov: cov_of(values, Spread::Population)?,
        })
    }
}

/// One table row: a sample of one society compared across the two arms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub society: SocietyPreset,
    pub sample: SampleLabel,
    /// Agents per repeat.
    pub size: usize,
    pub stable: SampleStats,
    pub svoie: SampleStats,
    /// Welch p-value on individual welfares pooled over repeats.
    pub p_value: Option<f64>,
    pub cohens_d: Option<f64>,
    /// Collective welfare of each repeat, per arm.
    pub repeat_means_stable: Vec<f64>,
    pub repeat_means_svoie: Vec<f64>,
    /// Welch p-value on the per-repeat collective welfares.
    pub repeat_p_value: Option<f64>,
}

impl ComparisonResult {
    pub fn mean_stable(&self) -> f64 {
        self.stable.mean
    }
    pub fn mean_svoie(&self) -> f64 {
        self.svoie.mean
    }
    pub fn cov_stable(&self) -> f64 {
        self.stable.cov
    }
    pub fn cov_svoie(&self) -> f64 {
        self.svoie.cov
    }
}

fn repeat_means(table: &WelfareTable, label: SampleLabel) -> Result<Vec<f64>, StatsError> {
    (0..table.repeats).map(|r| collective_welfare(&table.sample_for_repeat(label, r))).collect()
}

/// Rows in table order: `all` first, then each trait present.
pub fn summarize(stable: &WelfareTable, svoie: &WelfareTable) -> Result<Vec<ComparisonResult>> {
    if stable.society != svoie.society {
        return Err(Error::Mismatch(format!("comparing society {} with {}", stable.society, svoie.society)));
    }
    let labels = stable.labels();
    if labels != svoie.labels() {
        return Err(Error::Mismatch("arms hold different SVO traits".into()));
    }
    let mut rows = Vec::with_capacity(labels.len());
    for label in labels {
        let a = stable.sample(label).values;
        let b = svoie.sample(label).values;
        let rs = repeat_means(stable, label)?;
        let rv = repeat_means(svoie, label)?;
        rows.push(ComparisonResult {
            society: stable.society,
            sample: label,
            size: stable.sample_size(label),
            stable: SampleStats::of(&a)?,
            svoie: SampleStats::of(&b)?,
            p_value: two_sample_t_test(&a, &b).ok(),
            cohens_d: cohens_d(&a, &b).ok(),
            repeat_p_value: two_sample_t_test(&rs, &rv).ok(),
            repeat_means_stable: rs,
            repeat_means_svoie: rv,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn sample(values: &[f64]) -> WelfareSample {
        WelfareSample {
            society: SocietyPreset::Mixed,
            label: SampleLabel::All,
            mode: Mode::Stable,
            values: values.to_vec(),
        }
    }

    #[test]
    fn cov_of_two_four_six() {
        // std = sqrt(8/3), mean 4
        let c = cov(&sample(&[2.0, 4.0, 6.0])).unwrap();
        assert!(close(c, (8.0f64 / 3.0).sqrt() / 4.0, 1e-15));
        assert!(close(c, 0.40825, 1e-5));
    }

    #[test]
    fn cov_edge_cases() {
        assert_eq!(cov(&sample(&[3.0, 3.0, 3.0])).unwrap(), 0.0);
        assert_eq!(cov(&sample(&[-1.0, 1.0])), Err(StatsError::ZeroMean));
        let base = cov(&sample(&[1.0, 5.0, 9.5])).unwrap();
        let scaled = cov(&sample(&[7.0, 35.0, 66.5])).unwrap();
        assert!(close(base, scaled, 1e-14));
    }

    #[test]
    fn collective_welfare_is_mean() {
        assert_eq!(collective_welfare(&sample(&[14.0, 16.0])).unwrap(), 15.0);
        assert_eq!(collective_welfare(&sample(&[7.5])).unwrap(), 7.5);
        assert_eq!(collective_welfare(&sample(&[])), Err(StatsError::Empty));
    }

    #[test]
    fn t_test_identities() {
        let a = [1.0, 2.0, 3.5, 4.0];
        assert_eq!(two_sample_t_test(&a, &a).unwrap(), 1.0);
        let lo: Vec<f64> = (0..30).map(|i| (i % 3) as f64 * 0.1).collect();
        let hi: Vec<f64> = lo.iter().map(|v| v + 100.0).collect();
        assert!(two_sample_t_test(&lo, &hi).unwrap() < 0.001);
        assert_eq!(two_sample_t_test(&[1.0, 1.0], &[2.0, 2.0]), Err(StatsError::ZeroVariance));
        assert!(matches!(two_sample_t_test(&[1.0], &a), Err(StatsError::TooFew { .. })));
    }

    #[test]
    fn cohens_d_cases() {
        assert_eq!(cohens_d(&[1.0, 3.0], &[0.0, 4.0]).unwrap(), 0.0);
        assert_eq!(cohens_d(&[0.0, 0.0], &[1.0, 1.0]), Err(StatsError::ZeroVariance));
        let a = [1.0, 2.0, 3.0];
        let b = [2.0, 3.0, 4.0];
        assert_eq!(cohens_d(&a, &b).unwrap(), cohens_d(&b, &a).unwrap());
        assert!(close(cohens_d(&a, &b).unwrap(), 1.0, 1e-15));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(v), 2.0);
    }
}

//! One line of an experiment file.

use lmcrt::serde_dec;
use lmcrt::{DlogInstance, Natural, Result, SafePrimeParams, VerificationReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub id: u64,
    #[serde(with = "serde_dec")]
    pub p: Natural,
    #[serde(with = "serde_dec")]
    pub q: Natural,
    #[serde(with = "serde_dec")]
    pub a0: Natural,
    #[serde(with = "serde_dec")]
    pub b0: Natural,
    #[serde(with = "serde_dec")]
    pub n: Natural,
    #[serde(rename = "A", with = "serde_dec")]
    pub base_power_a: Natural,
    #[serde(rename = "B", with = "serde_dec")]
    pub base_power_b: Natural,
    #[serde(with = "serde_dec")]
    pub k_a: Natural,
    #[serde(with = "serde_dec")]
    pub k_b: Natural,
    #[serde(with = "serde_dec")]
    pub q_a0: Natural,
    #[serde(with = "serde_dec")]
    pub q_b0: Natural,
    #[serde(with = "serde_dec")]
    pub a1: Natural,
    #[serde(with = "serde_dec")]
    pub b1: Natural,
    #[serde(with = "serde_dec")]
    pub beta: Natural,
    #[serde(with = "serde_dec")]
    pub c: Natural,
    #[serde(with = "serde_dec")]
    pub d: Natural,
    pub lemma1_ok: bool,
    pub lemma2_corrected_ok: bool,
    pub lemma2_literal_ok: bool,
    pub eq19_corrected_ok: bool,
    pub recovered_n_ok: bool,
}

/// The flag columns written by `--csv`.
#[derive(Serialize)]
pub struct FlagRow {
    pub id: u64,
    pub p: String,
    pub a0: String,
    pub b0: String,
    pub n: String,
    pub lemma1_ok: bool,
    pub lemma2_corrected_ok: bool,
    pub lemma2_literal_ok: bool,
    pub eq19_corrected_ok: bool,
    pub recovered_n_ok: bool,
}

impl ExperimentRecord {
    pub fn from_report(id: u64, report: &VerificationReport) -> Self {
        let checks = &report.checks;
        let inst = &report.instance;
        ExperimentRecord {
            id,
            p: inst.params.p().clone(),
            q: inst.params.q().clone(),
            a0: inst.a0.clone(),
            b0: inst.b0.clone(),
            n: report.n.clone(),
            base_power_a: report.profile_a.power.value().clone(),
            base_power_b: report.profile_b.power.value().clone(),
            k_a: report.profile_a.carry.value().clone(),
            k_b: report.profile_b.carry.value().clone(),
            q_a0: report.profile_a.lerch.value().clone(),
            q_b0: report.profile_b.lerch.value().clone(),
            a1: report.profile_a.digit.value().clone(),
            b1: report.profile_b.digit.value().clone(),
            beta: report.beta.value().clone(),
            c: report.c.value().clone(),
            d: report.d.value().clone(),
            lemma1_ok: checks.lemma1,
            lemma2_corrected_ok: checks.lift_corrected
                && checks.master_congruence
                && checks.part_congruences,
            lemma2_literal_ok: checks.literal_ok(),
            eq19_corrected_ok: checks.quotient_relation_corrected,
            recovered_n_ok: checks.subgroup_index && checks.recovered_n,
        }
    }

    pub fn compute(id: u64, inst: &DlogInstance) -> Result<Self> {
        Ok(Self::from_report(
            id,
            &lmcrt::reduction::verify_instance(inst)?,
        ))
    }

    /// Rebuilds the instance from `p, q, a0, b0, n` alone.
    pub fn instance(&self) -> Result<DlogInstance> {
        let params = SafePrimeParams::new(self.p.clone(), self.q.clone())?;
        DlogInstance::new(
            params,
            self.a0.clone(),
            self.b0.clone(),
            Some(self.n.clone()),
        )
    }

    pub fn all_corrected_ok(&self) -> bool {
        self.lemma1_ok && self.lemma2_corrected_ok && self.eq19_corrected_ok && self.recovered_n_ok
    }

    pub fn flags(&self) -> FlagRow {
        FlagRow {
            id: self.id,
            p: self.p.to_string(),
            a0: self.a0.to_string(),
            b0: self.b0.to_string(),
            n: self.n.to_string(),
            lemma1_ok: self.lemma1_ok,
            lemma2_corrected_ok: self.lemma2_corrected_ok,
            lemma2_literal_ok: self.lemma2_literal_ok,
            eq19_corrected_ok: self.eq19_corrected_ok,
            recovered_n_ok: self.recovered_n_ok,
        }
    }
}

//! Incremental proof construction with block scoping.
//!
//! Every new step depends on every visible step. Fix, Find, induction and
//! case steps open a block; closing it hides the block's steps from what
//! follows. Dependence built this way is transitive and contiguous.

use crate::proof::{Justification, Proof, Step, StepKind};
use lnc_syntax::{name, Expr};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Default)]
pub struct ProofBuilder {
    proof: Proof,
    hidden: BTreeSet<usize>,
    open: Vec<usize>,
}

impl ProofBuilder {
    pub fn new(global_vars: &[&str]) -> Self {
        ProofBuilder {
            proof: Proof {
                global_vars: global_vars.iter().map(|v| name(v)).collect(),
                steps: Vec::new(),
            },
            ..Default::default()
        }
    }

    fn visible(&self) -> BTreeSet<usize> {
        (0..self.proof.steps.len()).filter(|i| !self.hidden.contains(i)).collect()
    }

    fn push(&mut self, kind: StepKind) -> usize {
        let depends = self.visible();
        self.proof.steps.push(Step { kind, depends });
        self.proof.steps.len() - 1
    }

    fn open(&mut self, kind: StepKind) -> usize {
        let k = self.push(kind);
        self.open.push(k);
        k
    }

    pub fn assume(&mut self, phi: Expr) -> usize {
        self.push(StepKind::Assume(phi))
    }

    pub fn then(&mut self, phi: Expr, by: Justification) -> usize {
        self.push(StepKind::Then { formula: phi, by })
    }

    pub fn fix(&mut self, var: &str, bound: Option<Expr>) -> usize {
        self.open(StepKind::Fix { var: name(var), bound })
    }

    pub fn find(&mut self, var: &str, bound: Option<Expr>, phi: Expr) -> usize {
        self.open(StepKind::Find {
            var: name(var),
            bound,
            formula: phi,
        })
    }

    /// Opens a case block; the split disjunction must be the last visible step.
    pub fn case(&mut self, index: u8, phi: Expr) -> usize {
        self.open(StepKind::Case { index, formula: phi })
    }

    pub fn fix_ind(&mut self, var: &str, phi: Expr) -> usize {
        self.open(StepKind::FixInd {
            var: name(var),
            formula: phi,
        })
    }

    /// Closes the innermost block, returning the step that opened it.
    pub fn close(&mut self) -> Option<usize> {
        let start = self.open.pop()?;
        self.hidden.extend(start..self.proof.steps.len());
        Some(start)
    }

    /// Conclusions currently visible, with their step indices.
    pub fn facts(&self) -> Vec<(usize, &Expr)> {
        self.visible()
            .into_iter()
            .filter_map(|i| self.proof.steps[i].kind.conclusion().map(|c| (i, c)))
            .collect()
    }

    pub fn last_visible(&self) -> Option<usize> {
        self.visible().into_iter().next_back()
    }

    pub fn depth(&self) -> usize {
        self.open.len()
    }

    pub fn len(&self) -> usize {
        self.proof.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proof.steps.is_empty()
    }

    pub fn step(&self, k: usize) -> &StepKind {
        &self.proof.steps[k].kind
    }

    /// Closes any open blocks and returns the proof.
    pub fn finish(mut self) -> Proof {
        while self.close().is_some() {}
        self.proof
    }
}

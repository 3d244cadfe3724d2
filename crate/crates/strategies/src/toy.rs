//! A two-register machine: `inc r`, `djz r t` (jump to `t` if `r` is zero,
//! else decrement), `halt r` (stop and output `r`).

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const REGISTERS: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Instr {
    Inc(u8),
    Djz(u8, usize),
    Halt(u8),
}

impl Instr {
    pub fn tokens(self) -> usize {
        match self {
            Instr::Inc(_) | Instr::Halt(_) => 2,
            Instr::Djz(..) => 3,
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::Inc(r) => write!(f, "inc {r}"),
            Instr::Djz(r, t) => write!(f, "djz {r} {t}"),
            Instr::Halt(r) => write!(f, "halt {r}"),
        }
    }
}

/// Serialized as its program text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToyProgram(pub Vec<Instr>);

impl Serialize for ToyProgram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("unknown instruction `{0}`")]
    Unknown(String),
    #[error("register {0} out of range")]
    Register(u8),
    #[error("jump target {target} outside a program of {len} instructions")]
    Target { target: usize, len: usize },
    #[error("empty program")]
    Empty,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Run {
    Halted { output: u64, steps: u64 },
    /// Still running when fuel ran out; treated as non-halting.
    OutOfFuel,
}

impl Run {
    pub fn output(self) -> Option<u64> {
        match self {
            Run::Halted { output, .. } => Some(output),
            Run::OutOfFuel => None,
        }
    }
}

impl ToyProgram {
    pub fn new(code: Vec<Instr>) -> Result<Self, ProgramError> {
        let p = ToyProgram(code);
        p.check()?;
        Ok(p)
    }

    /// Closedness: registers exist and every jump lands on an instruction.
    pub fn check(&self) -> Result<(), ProgramError> {
        if self.0.is_empty() {
            return Err(ProgramError::Empty);
        }
        let len = self.0.len();
        for i in &self.0 {
            let (Instr::Inc(r) | Instr::Halt(r) | Instr::Djz(r, _)) = *i;
            if r >= REGISTERS {
                return Err(ProgramError::Register(r));
            }
            if let Instr::Djz(_, target) = *i {
                if target >= len {
                    return Err(ProgramError::Target { target, len });
                }
            }
        }
        Ok(())
    }

    pub fn token_length(&self) -> usize {
        self.0.iter().map(|i| i.tokens()).sum()
    }

    /// Runs from all-zero registers. Falling off the end never produces output,
    /// so it counts as running forever.
    pub fn run(&self, fuel: u64) -> Run {
        self.trace(fuel, |_, _| ())
    }

    /// Runs while reporting each configuration `(pc, registers)` before it executes.
    pub fn trace(&self, fuel: u64, mut visit: impl FnMut(usize, [u64; 2])) -> Run {
        let mut regs = [0u64; 2];
        let mut pc = 0usize;
        let mut steps = 0u64;
        while let Some(&ins) = self.0.get(pc) {
            if steps >= fuel {
                return Run::OutOfFuel;
            }
            visit(pc, regs);
            steps += 1;
            match ins {
                Instr::Inc(r) => {
                    regs[r as usize] += 1;
                    pc += 1;
                }
                Instr::Djz(r, t) => {
                    if regs[r as usize] == 0 {
                        pc = t;
                    } else {
                        regs[r as usize] -= 1;
                        pc += 1;
                    }
                }
                Instr::Halt(r) => {
                    return Run::Halted {
                        output: regs[r as usize],
                        steps,
                    }
                }
            }
        }
        Run::OutOfFuel
    }

    /// `ω` followed by "add 1 to the result": each `halt r` becomes `inc r; halt r`.
    pub fn wrap(&self) -> ToyProgram {
        let halts_before = |t: usize| self.0[..t].iter().filter(|i| matches!(i, Instr::Halt(_))).count();
        let mut out = Vec::new();
        for ins in &self.0 {
            match *ins {
                Instr::Halt(r) => {
                    out.push(Instr::Inc(r));
                    out.push(Instr::Halt(r));
                }
                Instr::Djz(r, t) => out.push(Instr::Djz(r, t + halts_before(t))),
                i => out.push(i),
            }
        }
        ToyProgram(out)
    }
}

impl fmt::Display for ToyProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Instr::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl FromStr for ToyProgram {
    type Err = ProgramError;

    /// Reads the `Display` form: instructions separated by `;` or newlines.
    fn from_str(s: &str) -> Result<Self, ProgramError> {
        let mut code = Vec::new();
        for part in s.split([';', '\n']).map(str::trim).filter(|p| !p.is_empty()) {
            let words: Vec<&str> = part.split_whitespace().collect();
            let num = |w: &str| w.parse::<usize>().map_err(|_| ProgramError::Unknown(part.to_string()));
            let reg = |w: &str| -> Result<u8, ProgramError> {
                let r = num(w)?;
                u8::try_from(r).map_err(|_| ProgramError::Unknown(part.to_string()))
            };
            code.push(match words.as_slice() {
                ["inc", r] => Instr::Inc(reg(r)?),
                ["halt", r] => Instr::Halt(reg(r)?),
                ["djz", r, t] => Instr::Djz(reg(r)?, num(t)?),
                _ => return Err(ProgramError::Unknown(part.to_string())),
            });
        }
        ToyProgram::new(code)
    }
}

/// Every closed program of exactly `len` tokens, in a fixed order.
pub fn programs_of_length(len: usize) -> Vec<ToyProgram> {
    let mut out = Vec::new();
    // Instruction count is fixed first so jump targets have a known range.
    for count in 1..=len / 2 {
        let mut prefix = Vec::with_capacity(count);
        extend(&mut prefix, count, len, &mut out);
    }
    out
}

fn extend(prefix: &mut Vec<Instr>, count: usize, budget: usize, out: &mut Vec<ToyProgram>) {
    let left = count - prefix.len();
    if left == 0 {
        if budget == 0 {
            out.push(ToyProgram(prefix.clone()));
        }
        return;
    }
    if budget < 2 * left || budget > 3 * left {
        return;
    }
    for r in 0..REGISTERS {
        for ins in [Instr::Inc(r), Instr::Halt(r)].into_iter().chain((0..count).map(|t| Instr::Djz(r, t))) {
            if ins.tokens() <= budget {
                prefix.push(ins);
                extend(prefix, count, budget - ins.tokens(), out);
                prefix.pop();
            }
        }
    }
}

/// One row of the fuel-bounded Busy Beaver table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BbRow {
    pub length: usize,
    /// Largest output of any program of at most `length` tokens that halted within fuel.
    pub best: Option<u64>,
    pub witness: Option<ToyProgram>,
    /// Programs of exactly `length` tokens.
    pub programs: usize,
    /// Of those, how many halted within fuel.
    pub halted: usize,
}

/// Better entry first: larger output, then the lexicographically least text.
fn better(a: &(u64, ToyProgram), b: &(u64, ToyProgram)) -> std::cmp::Ordering {
    b.0.cmp(&a.0).then_with(|| a.1.to_string().cmp(&b.1.to_string()))
}

/// A lower bound on the toy Busy Beaver function for each length up to `max_len`.
pub fn busy_beaver_table(max_len: usize, fuel: u64) -> Vec<BbRow> {
    let mut best: Option<(u64, ToyProgram)> = None;
    let mut rows = Vec::new();
    for length in 1..=max_len {
        let programs = programs_of_length(length);
        let halted: Vec<(u64, ToyProgram)> = programs
            .par_iter()
            .filter_map(|p| p.run(fuel).output().map(|o| (o, p.clone())))
            .collect();
        let here = halted.iter().min_by(|a, b| better(a, b)).cloned();
        best = match (best, here) {
            (Some(a), Some(b)) => Some(if better(&b, &a).is_lt() { b } else { a }),
            (a, b) => a.or(b),
        };
        rows.push(BbRow {
            length,
            best: best.as_ref().map(|b| b.0),
            witness: best.as_ref().map(|b| b.1.clone()),
            programs: programs.len(),
            halted: halted.len(),
        });
    }
    rows
}

/// The wrap argument at one length: the winner `ω` must be so long that
/// `wrap(ω)`, which outputs one more, no longer fits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WrapCheck {
    pub length: usize,
    pub winner_length: usize,
    /// Token cost of the wrap for this winner.
    pub cost: usize,
    pub wrapped_output: Option<u64>,
    pub holds: bool,
}

pub fn wrap_checks(table: &[BbRow], fuel: u64) -> Vec<WrapCheck> {
    table
        .iter()
        .filter_map(|row| {
            let w = row.witness.as_ref()?;
            let wrapped = w.wrap();
            let cost = wrapped.token_length() - w.token_length();
            let wrapped_output = wrapped.run(fuel).output();
            let beats = wrapped_output.zip(row.best).map_or(false, |(x, b)| x > b);
            // If the wrap halted within fuel and fit, the table would have seen it.
            let holds = wrapped_output.is_none() || (beats && wrapped.token_length() > row.length);
            Some(WrapCheck {
                length: row.length,
                winner_length: w.token_length(),
                cost,
                wrapped_output,
                holds,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p: ToyProgram = "inc 0; djz 1 0; halt 0".parse().unwrap();
        assert_eq!(p.to_string().parse::<ToyProgram>().unwrap(), p);
        assert_eq!(p.token_length(), 7);
        assert!("djz 0 5".parse::<ToyProgram>().is_err());
        assert!("inc 2".parse::<ToyProgram>().is_err());
    }

    #[test]
    fn loops_run_out_of_fuel() {
        let p: ToyProgram = "djz 0 0".parse().unwrap();
        assert_eq!(p.run(100), Run::OutOfFuel);
        let fall: ToyProgram = "inc 0".parse().unwrap();
        assert_eq!(fall.run(100), Run::OutOfFuel);
    }

    #[test]
    fn zero_test_jumps() {
        let p: ToyProgram = "inc 0; inc 0; djz 1 4; halt 1; halt 0".parse().unwrap();
        assert_eq!(p.run(1000), Run::Halted { output: 2, steps: 4 });
        // Counts r0 down to zero, then jumps to the halt.
        let q: ToyProgram = "inc 0; inc 0; djz 0 3; djz 1 2; halt 1".parse().unwrap();
        assert_eq!(q.run(1000).output(), None);
        let r: ToyProgram = "inc 0; inc 0; djz 0 4; djz 1 2; halt 0".parse().unwrap();
        assert_eq!(r.run(1000).output(), Some(0));
    }

    #[test]
    fn wrap_adds_one_and_retargets() {
        let p: ToyProgram = "djz 0 2; halt 1; inc 0; halt 0".parse().unwrap();
        let w = p.wrap();
        assert_eq!(w.to_string(), "djz 0 3; inc 1; halt 1; inc 0; inc 0; halt 0");
        assert_eq!(w.run(100).output(), Some(2));
        assert_eq!(p.run(100).output(), Some(1));
    }

    #[test]
    fn enumeration_counts_by_length() {
        for len in 1..=9 {
            for p in programs_of_length(len) {
                assert_eq!(p.token_length(), len);
                p.check().unwrap();
            }
        }
        assert_eq!(programs_of_length(2).len(), 4);
    }
}

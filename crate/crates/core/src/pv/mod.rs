//! Linear PV programs: parallel sequential processes locking (`P`) and
//! unlocking (`V`) named mutexes, and their geometric semantics.

mod parse;
mod semantics;

use std::fmt;

use thiserror::Error;

pub use parse::parse;
pub use semantics::{
    ambient, forbidden_cubes, forbidden_region, model, resource_groups, HoldBoundary, FORBIDDEN_BOUNDARY,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    P,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub op: Op,
    pub resource: String,
}

impl Action {
    pub fn lock(resource: &str) -> Self {
        Action {
            op: Op::P,
            resource: resource.to_string(),
        }
    }

    pub fn unlock(resource: &str) -> Self {
        Action {
            op: Op::V,
            resource: resource.to_string(),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            Op::P => 'P',
            Op::V => 'V',
        };
        write!(f, "{op}{}", self.resource)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Process {
    pub name: String,
    pub body: Vec<Action>,
}

/// Declared processes plus the parallel composition to run. Each entry of
/// `main` is one coordinate of the state space, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PvProgram {
    processes: Vec<Process>,
    main: Vec<String>,
}

impl PvProgram {
    /// Checks declaration-level invariants: unique names, nonempty bodies,
    /// `main` entries declared.
    pub fn new(processes: Vec<Process>, main: Vec<String>) -> Result<Self, ProgramError> {
        for (i, p) in processes.iter().enumerate() {
            if processes[..i].iter().any(|q| q.name == p.name) {
                return Err(ProgramError::DuplicateProcess(p.name.clone()));
            }
            if p.body.is_empty() {
                return Err(ProgramError::EmptyBody(p.name.clone()));
            }
        }
        if let Some(name) = main.iter().find(|m| !processes.iter().any(|p| &&p.name == m)) {
            return Err(ProgramError::UnknownProcess(name.clone()));
        }
        Ok(PvProgram { processes, main })
    }

    /// Runs every declared process in declaration order.
    pub fn from_processes(processes: Vec<Process>) -> Result<Self, ProgramError> {
        let main = processes.iter().map(|p| p.name.clone()).collect();
        Self::new(processes, main)
    }

    pub fn processes(&self) -> &[Process] {
        &self.processes
    }

    pub fn main(&self) -> &[String] {
        &self.main
    }

    /// The processes of `main`, one per coordinate.
    pub fn threads(&self) -> Vec<&Process> {
        self.main
            .iter()
            .map(|m| self.processes.iter().find(|p| &p.name == m).expect("checked in new"))
            .collect()
    }

    pub fn thread_count(&self) -> usize {
        self.main.len()
    }

    /// The program running only the given coordinates of `main`, in the
    /// given order.
    pub fn restrict(&self, threads: &[usize]) -> PvProgram {
        PvProgram {
            processes: self.processes.clone(),
            main: threads.iter().map(|&i| self.main[i].clone()).collect(),
        }
    }

    /// Checks that each process uses every mutex in properly alternating
    /// `P`/`V` pairs and returns the lock spans, per thread of `main`.
    pub fn validate(&self) -> Result<Vec<HoldInterval>, ValidationError> {
        let mut per_process = Vec::with_capacity(self.processes.len());
        for p in &self.processes {
            per_process.push(holds_of(p)?);
        }
        let mut out = Vec::new();
        for (thread, name) in self.main.iter().enumerate() {
            let idx = self
                .processes
                .iter()
                .position(|p| &p.name == name)
                .expect("checked in new");
            out.extend(per_process[idx].iter().map(|(resource, p_pos, v_pos)| HoldInterval {
                thread,
                resource: resource.clone(),
                p_pos: *p_pos,
                v_pos: *v_pos,
            }));
        }
        Ok(out)
    }
}

impl fmt::Display for PvProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.processes {
            write!(f, "{} = ", p.name)?;
            for (i, a) in p.body.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                write!(f, "{a}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "main = {}", self.main.join(" | "))
    }
}

/// The instruction span during which a thread holds a mutex. Positions are
/// 1-based instruction indices; the P sits at `p_pos`, its V at `v_pos`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoldInterval {
    pub thread: usize,
    pub resource: String,
    pub p_pos: usize,
    pub v_pos: usize,
}

fn holds_of(p: &Process) -> Result<Vec<(String, usize, usize)>, ValidationError> {
    let mut open: Vec<(String, usize)> = Vec::new();
    let mut spans = Vec::new();
    for (i, action) in p.body.iter().enumerate() {
        let pos = i + 1;
        let held = open.iter().position(|(r, _)| r == &action.resource);
        match (action.op, held) {
            (Op::P, None) => open.push((action.resource.clone(), pos)),
            (Op::P, Some(_)) => {
                return Err(ValidationError::LockWhileHeld {
                    process: p.name.clone(),
                    resource: action.resource.clone(),
                    position: pos,
                })
            }
            (Op::V, Some(k)) => {
                let (resource, p_pos) = open.remove(k);
                spans.push((resource, p_pos, pos));
            }
            (Op::V, None) => {
                return Err(ValidationError::UnlockWithoutLock {
                    process: p.name.clone(),
                    resource: action.resource.clone(),
                    position: pos,
                })
            }
        }
    }
    if let Some((resource, position)) = open.into_iter().min_by_key(|(_, pos)| *pos) {
        return Err(ValidationError::Unreleased {
            process: p.name.clone(),
            resource,
            position,
        });
    }
    spans.sort_by_key(|(_, p_pos, _)| *p_pos);
    Ok(spans)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProgramError {
    #[error("duplicate process `{0}`")]
    DuplicateProcess(String),
    #[error("unknown process `{0}` in main")]
    UnknownProcess(String),
    #[error("process `{0}` has an empty body")]
    EmptyBody(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("process `{process}`: V{resource} at position {position} without a matching P")]
    UnlockWithoutLock {
        process: String,
        resource: String,
        position: usize,
    },
    #[error("process `{process}`: P{resource} at position {position} while already held")]
    LockWhileHeld {
        process: String,
        resource: String,
        position: usize,
    },
    #[error("process `{process}`: P{resource} at position {position} is never released")]
    Unreleased {
        process: String,
        resource: String,
        position: usize,
    },
}

/// A syntax or declaration error located in the source text (1-based).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Anything that keeps a program from having geometric semantics.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PvError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("program has no processes")]
    NoProcesses,
}

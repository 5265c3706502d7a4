//! Statements, semidecidable tests, and observations.
//!
//! A [`Test`] is a repeatable step machine that either succeeds after finitely
//! many steps or runs forever. An [`Observation`] pairs a [`Statement`] with a
//! test such that the statement is true exactly when the test succeeds.
//! Observations combine under finite [`conjunction`] and countable
//! [`disjunction`]. There is no negation: knowing how to verify a statement
//! says nothing about verifying its opposite.

use std::fmt;
use std::num::NonZeroU64;
use std::sync::Arc;

use thiserror::Error;

use crate::points::PointSet;
use crate::scheduler::{DovetailRun, SequentialRun, TestStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Running,
    /// Absorbing. Stepping a run again after this is a contract violation.
    Succeeded,
}

/// Deterministic behaviour of a primitive test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Script {
    /// Reports `Running` for steps `1..k` and `Succeeded` at step `k`.
    SucceedAt(NonZeroU64),
    Diverge,
}

impl Script {
    /// # Panics
    /// If `k` is zero.
    pub fn succeed_at(k: u64) -> Self {
        Script::SucceedAt(NonZeroU64::new(k).expect("a test needs at least one step to succeed"))
    }
}

/// An experimental test: an immutable description that can be started any
/// number of times. Each [`TestRun`] is an independent execution.
#[derive(Debug, Clone)]
pub enum Test {
    Scripted(Script),
    /// Sequential run-to-completion of every member.
    All(Arc<[Test]>),
    /// Round-based dovetailing over a countable stream.
    Any(TestStream),
}

impl Test {
    pub fn succeed_at(k: u64) -> Self {
        Test::Scripted(Script::succeed_at(k))
    }

    pub fn diverge() -> Self {
        Test::Scripted(Script::Diverge)
    }

    pub fn start(&self) -> TestRun {
        let state = match self {
            Test::Scripted(script) => RunState::Scripted {
                script: *script,
                steps: 0,
                done: false,
            },
            Test::All(tests) => RunState::All(SequentialRun::new(tests.clone())),
            Test::Any(stream) => RunState::Any(DovetailRun::new(stream.clone())),
        };
        TestRun {
            test: self.clone(),
            steps: 0,
            state,
        }
    }
}

impl From<Script> for Test {
    fn from(script: Script) -> Self {
        Test::Scripted(script)
    }
}

/// One execution of a [`Test`].
#[derive(Debug, Clone)]
pub struct TestRun {
    test: Test,
    steps: u64,
    state: RunState,
}

#[derive(Debug, Clone)]
enum RunState {
    Scripted { script: Script, steps: u64, done: bool },
    All(SequentialRun),
    Any(DovetailRun),
}

impl TestRun {
    /// # Panics
    /// If called again after the run reported `Succeeded`.
    pub fn step(&mut self) -> StepOutcome {
        let outcome = match &mut self.state {
            RunState::Scripted {
                script,
                steps,
                done,
            } => {
                assert!(!*done, "stepped a test after it succeeded");
                *steps += 1;
                match script {
                    Script::SucceedAt(k) if *steps == k.get() => {
                        *done = true;
                        StepOutcome::Succeeded
                    }
                    _ => StepOutcome::Running,
                }
            }
            RunState::All(run) => run.step(),
            RunState::Any(run) => run.step(),
        };
        self.steps += 1;
        outcome
    }

    /// Restores the initial state of the run.
    pub fn reset(&mut self) {
        *self = self.test.start();
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }
}

/// A classical true/false sentence about a ground-truth model `M`.
pub struct Statement<M> {
    description: String,
    predicate: Arc<dyn Fn(&M) -> bool + Send + Sync>,
}

impl<M> Statement<M> {
    pub fn new<F>(description: impl Into<String>, predicate: F) -> Self
    where
        F: Fn(&M) -> bool + Send + Sync + 'static,
    {
        Statement {
            description: description.into(),
            predicate: Arc::new(predicate),
        }
    }

    pub fn eval(&self, model: &M) -> bool {
        (self.predicate)(model)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl<M: 'static> Statement<M> {
    fn all(parts: Vec<Statement<M>>) -> Self {
        let description = join_descriptions(&parts, " AND ");
        let predicates: Vec<_> = parts.into_iter().map(|s| s.predicate).collect();
        Statement {
            description,
            predicate: Arc::new(move |m: &M| predicates.iter().all(|p| p(m))),
        }
    }

    fn any(parts: Vec<Statement<M>>) -> Self {
        let description = join_descriptions(&parts, " OR ");
        let predicates: Vec<_> = parts.into_iter().map(|s| s.predicate).collect();
        Statement {
            description,
            predicate: Arc::new(move |m: &M| predicates.iter().any(|p| p(m))),
        }
    }
}

fn join_descriptions<M>(parts: &[Statement<M>], sep: &str) -> String {
    if parts.len() == 1 {
        return parts[0].description.clone();
    }
    parts
        .iter()
        .map(|s| format!("({})", s.description))
        .collect::<Vec<_>>()
        .join(sep)
}

impl<M> Clone for Statement<M> {
    fn clone(&self) -> Self {
        Statement {
            description: self.description.clone(),
            predicate: self.predicate.clone(),
        }
    }
}

impl<M> fmt::Debug for Statement<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Statement").field(&self.description).finish()
    }
}

/// A statement paired with a test that succeeds iff the statement is true.
///
/// Observations in an identification domain also carry their verifiable set
/// `U`: the statement is then `x ∈ U` for the hidden element `x`.
pub struct Observation<M> {
    statement: Statement<M>,
    test: Test,
    verifiable_set: Option<PointSet>,
}

impl<M> Observation<M> {
    /// The caller is responsible for the iff contract between the two halves.
    pub fn new(statement: Statement<M>, test: Test) -> Self {
        Observation {
            statement,
            test,
            verifiable_set: None,
        }
    }

    pub fn statement(&self) -> &Statement<M> {
        &self.statement
    }

    pub fn test(&self) -> &Test {
        &self.test
    }

    pub fn verifiable_set(&self) -> Option<&PointSet> {
        self.verifiable_set.as_ref()
    }
}

impl Observation<usize> {
    /// The membership observation `x ∈ set` for a hidden element `hidden`.
    ///
    /// Its test succeeds after `steps` steps when `hidden ∈ set` and diverges
    /// otherwise, so the iff contract holds by construction.
    pub fn membership(set: PointSet, hidden: usize, steps: NonZeroU64) -> Self {
        let script = if set.contains(hidden) {
            Script::SucceedAt(steps)
        } else {
            Script::Diverge
        };
        let members = set.clone();
        let statement = Statement::new(format!("x in {set:?}"), move |x: &usize| {
            members.contains(*x)
        });
        Observation {
            statement,
            test: Test::Scripted(script),
            verifiable_set: Some(set),
        }
    }
}

impl<M> Clone for Observation<M> {
    fn clone(&self) -> Self {
        Observation {
            statement: self.statement.clone(),
            test: self.test.clone(),
            verifiable_set: self.verifiable_set.clone(),
        }
    }
}

impl<M> fmt::Debug for Observation<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Observation")
            .field("statement", &self.statement)
            .field("test", &self.test)
            .field("verifiable_set", &self.verifiable_set)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObservationError {
    #[error("combination needs at least one observation")]
    Empty,
    #[error("observation has no verifiable set; contradiction is undecidable for opaque statements")]
    MissingVerifiableSet,
    #[error("verifiable sets come from universes of different sizes")]
    UniverseMismatch,
}

/// A countable stream of observations for [`disjunction`].
pub enum ObservationStream<M> {
    Finite(Vec<Observation<M>>),
    /// An infinite stream. The statement "some member is true" cannot be
    /// computed by scanning, so the caller supplies it.
    Unbounded {
        generator: Arc<dyn Fn(usize) -> Observation<M> + Send + Sync>,
        any_true: Statement<M>,
    },
}

impl<M> ObservationStream<M> {
    pub fn unbounded<F>(generator: F, any_true: Statement<M>) -> Self
    where
        F: Fn(usize) -> Observation<M> + Send + Sync + 'static,
    {
        ObservationStream::Unbounded {
            generator: Arc::new(generator),
            any_true,
        }
    }
}

fn combine_sets<'a, M: 'a>(
    observations: impl IntoIterator<Item = &'a Observation<M>>,
    merge: impl Fn(&PointSet, &PointSet) -> PointSet,
) -> Result<Option<PointSet>, ObservationError> {
    let mut acc: Option<PointSet> = None;
    for o in observations {
        let Some(set) = &o.verifiable_set else {
            return Ok(None);
        };
        acc = Some(match acc {
            None => set.clone(),
            Some(prev) if prev.universe_len() != set.universe_len() => {
                return Err(ObservationError::UniverseMismatch)
            }
            Some(prev) => merge(&prev, set),
        });
    }
    Ok(acc)
}

/// Finite conjunction. The test runs each member to completion in order.
pub fn conjunction<M: 'static>(
    observations: &[Observation<M>],
) -> Result<Observation<M>, ObservationError> {
    if observations.is_empty() {
        return Err(ObservationError::Empty);
    }
    let verifiable_set = combine_sets(observations, PointSet::intersection)?;
    let statement = Statement::all(observations.iter().map(|o| o.statement.clone()).collect());
    let tests: Vec<Test> = observations.iter().map(|o| o.test.clone()).collect();
    Ok(Observation {
        statement,
        test: Test::All(tests.into()),
        verifiable_set,
    })
}

/// Countable disjunction. The test dovetails the members' tests.
///
/// Only a finite stream whose members all carry verifiable sets yields a
/// verifiable set (their union).
pub fn disjunction<M: 'static>(
    observations: ObservationStream<M>,
) -> Result<Observation<M>, ObservationError> {
    match observations {
        ObservationStream::Finite(list) => {
            if list.is_empty() {
                return Err(ObservationError::Empty);
            }
            let verifiable_set = combine_sets(&list, PointSet::union)?;
            let tests: Vec<Test> = list.iter().map(|o| o.test.clone()).collect();
            let statement = Statement::any(list.into_iter().map(|o| o.statement).collect());
            Ok(Observation {
                statement,
                test: Test::Any(TestStream::finite(tests).map_err(|_| ObservationError::Empty)?),
                verifiable_set,
            })
        }
        ObservationStream::Unbounded {
            generator,
            any_true,
        } => Ok(Observation {
            statement: any_true,
            test: Test::Any(TestStream::unbounded(move |i| generator(i).test)),
            verifiable_set: None,
        }),
    }
}

/// True iff the observation's verifiable set is empty.
pub fn is_contradiction<M>(o: &Observation<M>) -> Result<bool, ObservationError> {
    o.verifiable_set
        .as_ref()
        .map(PointSet::is_empty)
        .ok_or(ObservationError::MissingVerifiableSet)
}

/// True iff the conjunction of the two observations is a contradiction.
pub fn incompatible<M>(a: &Observation<M>, b: &Observation<M>) -> Result<bool, ObservationError> {
    match (&a.verifiable_set, &b.verifiable_set) {
        (Some(u), Some(v)) if u.universe_len() == v.universe_len() => Ok(u.is_disjoint(v)),
        (Some(_), Some(_)) => Err(ObservationError::UniverseMismatch),
        _ => Err(ObservationError::MissingVerifiableSet),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Success,
    /// Inconclusive: the budget ran out. Never evidence that the statement is false.
    Exhausted,
}

/// Runs the observation's test for at most `fuel` steps.
pub fn verify<M>(o: &Observation<M>, fuel: u64) -> Verdict {
    let mut run = o.test.start();
    for _ in 0..fuel {
        if run.step() == StepOutcome::Succeeded {
            return Verdict::Success;
        }
    }
    Verdict::Exhausted
}

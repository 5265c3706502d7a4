//! Executors for combined tests.
//!
//! Two schedules are implemented, both counted in discrete steps:
//!
//! * [`SequentialRun`] runs a finite list of tests one after another, each to
//!   completion. It succeeds once every test has succeeded.
//! * [`DovetailRun`] interleaves a countable stream of tests in rounds. In
//!   round `n`, tests `1..=n` are each restarted and given `n` steps, in index
//!   order. The first test to succeed wins. A test at position `i` that
//!   succeeds after `k` steps is therefore detected in round `max(i, k)`.
//!
//! Every step of every run counts against fuel, including the partial runs
//! that a later round throws away.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::observation::{StepOutcome, Test, TestRun};

/// Step budget for a driven run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fuel {
    Steps(u64),
    /// Runs until success. Never returns for a test that diverges.
    Unbounded,
}

impl Fuel {
    fn allows(self, spent: u64) -> bool {
        match self {
            Fuel::Steps(limit) => spent < limit,
            Fuel::Unbounded => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("cannot schedule an empty collection of tests")]
    Empty,
}

/// A countable stream of tests, addressed by 0-based position.
#[derive(Clone)]
pub struct TestStream(StreamSource);

#[derive(Clone)]
enum StreamSource {
    Finite(Arc<[Test]>),
    Unbounded(Arc<dyn Fn(usize) -> Test + Send + Sync>),
}

impl TestStream {
    pub fn finite(tests: Vec<Test>) -> Result<Self, ScheduleError> {
        if tests.is_empty() {
            return Err(ScheduleError::Empty);
        }
        Ok(TestStream(StreamSource::Finite(tests.into())))
    }

    /// An infinite stream; `generator(i)` yields the test at position `i`.
    pub fn unbounded<F>(generator: F) -> Self
    where
        F: Fn(usize) -> Test + Send + Sync + 'static,
    {
        TestStream(StreamSource::Unbounded(Arc::new(generator)))
    }

    /// `None` for an infinite stream.
    pub fn len(&self) -> Option<usize> {
        match &self.0 {
            StreamSource::Finite(tests) => Some(tests.len()),
            StreamSource::Unbounded(_) => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn get(&self, position: usize) -> Option<Test> {
        match &self.0 {
            StreamSource::Finite(tests) => tests.get(position).cloned(),
            StreamSource::Unbounded(generator) => Some(generator(position)),
        }
    }
}

impl fmt::Debug for TestStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            StreamSource::Finite(tests) => f.debug_tuple("Finite").field(tests).finish(),
            StreamSource::Unbounded(_) => f.write_str("Unbounded(..)"),
        }
    }
}

/// Step machine for the conjunction schedule.
#[derive(Debug, Clone)]
pub struct SequentialRun {
    tests: Arc<[Test]>,
    current: usize,
    run: Option<Box<TestRun>>,
    done: bool,
}

impl SequentialRun {
    pub fn new(tests: Arc<[Test]>) -> Self {
        SequentialRun {
            tests,
            current: 0,
            run: None,
            done: false,
        }
    }

    /// Number of tests that have already succeeded.
    pub fn completed(&self) -> usize {
        self.current
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn step(&mut self) -> StepOutcome {
        assert!(!self.done, "stepped a conjunction after it succeeded");
        if self.tests.is_empty() {
            self.done = true;
            return StepOutcome::Succeeded;
        }
        let run = self
            .run
            .get_or_insert_with(|| Box::new(self.tests[self.current].start()));
        if run.step() == StepOutcome::Succeeded {
            self.run = None;
            self.current += 1;
            if self.current == self.tests.len() {
                self.done = true;
                return StepOutcome::Succeeded;
            }
        }
        StepOutcome::Running
    }
}

/// Step machine for the round-based disjunction schedule.
#[derive(Debug, Clone)]
pub struct DovetailRun {
    stream: TestStream,
    round: u64,
    position: usize,
    slice_steps: u64,
    run: Option<Box<TestRun>>,
    rounds_completed: u64,
    winner: Option<(usize, u64)>,
}

impl DovetailRun {
    pub fn new(stream: TestStream) -> Self {
        DovetailRun {
            stream,
            round: 1,
            position: 0,
            slice_steps: 0,
            run: None,
            rounds_completed: 0,
            winner: None,
        }
    }

    /// The current round, starting at 1.
    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn rounds_completed(&self) -> u64 {
        self.rounds_completed
    }

    /// `(1-based stream position, round)` of the winning test, once found.
    pub fn winner(&self) -> Option<(usize, u64)> {
        self.winner
    }

    pub fn step(&mut self) -> StepOutcome {
        assert!(self.winner.is_none(), "stepped a disjunction after it succeeded");
        let run = match &mut self.run {
            Some(run) => run,
            slot => {
                let test = self
                    .stream
                    .get(self.position)
                    .expect("dovetail position is always within the stream");
                slot.insert(Box::new(test.start()))
            }
        };
        let outcome = run.step();
        self.slice_steps += 1;
        if outcome == StepOutcome::Succeeded {
            self.winner = Some((self.position + 1, self.round));
            self.run = None;
            return StepOutcome::Succeeded;
        }
        if self.slice_steps == self.round {
            self.run = None;
            self.slice_steps = 0;
            self.position += 1;
            let width = match self.stream.len() {
                Some(len) => len.min(self.round as usize),
                None => self.round as usize,
            };
            if self.position >= width {
                self.position = 0;
                self.round += 1;
                self.rounds_completed += 1;
            }
        }
        StepOutcome::Running
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    /// `winner_index` is the 1-based stream position of the test whose
    /// success ended the run. For the sequential schedule it is the last
    /// test and `round` is 1.
    Success { winner_index: usize, round: u64 },
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunReport {
    pub outcome: RunOutcome,
    pub total_steps: u64,
    /// Dovetail: rounds finished in full. Sequential: tests that succeeded.
    pub rounds_completed: u64,
}

impl RunReport {
    pub fn succeeded(&self) -> bool {
        matches!(self.outcome, RunOutcome::Success { .. })
    }
}

/// Runs `tests` in order, each fresh, to completion or until fuel runs out.
pub fn run_all(tests: &[Test], fuel: Fuel) -> Result<RunReport, ScheduleError> {
    if tests.is_empty() {
        return Err(ScheduleError::Empty);
    }
    let mut run = SequentialRun::new(tests.to_vec().into());
    let mut spent = 0;
    while fuel.allows(spent) {
        spent += 1;
        if run.step() == StepOutcome::Succeeded {
            return Ok(RunReport {
                outcome: RunOutcome::Success {
                    winner_index: tests.len(),
                    round: 1,
                },
                total_steps: spent,
                rounds_completed: run.completed() as u64,
            });
        }
    }
    Ok(RunReport {
        outcome: RunOutcome::Exhausted,
        total_steps: spent,
        rounds_completed: run.completed() as u64,
    })
}

/// Dovetails `stream` until some test succeeds or fuel runs out.
pub fn run_any(stream: &TestStream, fuel: Fuel) -> Result<RunReport, ScheduleError> {
    if stream.is_empty() {
        return Err(ScheduleError::Empty);
    }
    let mut run = DovetailRun::new(stream.clone());
    let mut spent = 0;
    while fuel.allows(spent) {
        spent += 1;
        if run.step() == StepOutcome::Succeeded {
            let (winner_index, round) = run.winner().expect("winner recorded on success");
            return Ok(RunReport {
                outcome: RunOutcome::Success {
                    winner_index,
                    round,
                },
                total_steps: spent,
                rounds_completed: run.rounds_completed(),
            });
        }
    }
    Ok(RunReport {
        outcome: RunOutcome::Exhausted,
        total_steps: spent,
        rounds_completed: run.rounds_completed(),
    })
}

/// `Σ_{n=1..rounds} n²`, the most steps a dovetail can spend in `rounds` rounds.
pub fn dovetail_step_bound(rounds: u64) -> u64 {
    rounds * (rounds + 1) * (2 * rounds + 1) / 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observation::Script;

    fn succeed(k: u64) -> Test {
        Test::succeed_at(k)
    }

    #[test]
    fn sequential_counts_every_step() {
        let report = run_all(&[succeed(2), succeed(3)], Fuel::Steps(100)).unwrap();
        assert_eq!(
            report.outcome,
            RunOutcome::Success {
                winner_index: 2,
                round: 1
            }
        );
        assert_eq!(report.total_steps, 5);
        assert_eq!(report.rounds_completed, 2);
    }

    #[test]
    fn diverging_conjunct_blocks() {
        let report = run_all(&[succeed(2), Test::diverge()], Fuel::Steps(50)).unwrap();
        assert_eq!(report.outcome, RunOutcome::Exhausted);
        assert_eq!(report.total_steps, 50);
        assert_eq!(report.rounds_completed, 1);
    }

    #[test]
    fn single_step_conjunction() {
        let report = run_all(&[succeed(1)], Fuel::Steps(1)).unwrap();
        assert!(report.succeeded());
        assert_eq!(report.total_steps, 1);
    }

    #[test]
    fn empty_collections_are_rejected() {
        assert_eq!(run_all(&[], Fuel::Steps(5)), Err(ScheduleError::Empty));
        assert!(TestStream::finite(vec![]).is_err());
    }

    // Hand-simulated: round r costs r steps on test 1 then r on test 2 for
    // r = 2..4, plus 1 step in round 1, plus 5 + 5 in round 5.
    #[test]
    fn dovetail_finds_late_success_in_round_five() {
        let stream = TestStream::finite(vec![Test::diverge(), succeed(5)]).unwrap();
        let report = run_any(&stream, Fuel::Unbounded).unwrap();
        assert_eq!(
            report.outcome,
            RunOutcome::Success {
                winner_index: 2,
                round: 5
            }
        );
        assert_eq!(report.total_steps, 1 + 4 + 6 + 8 + 10);
        assert_eq!(report.rounds_completed, 4);
    }

    #[test]
    fn first_test_wins_in_round_one() {
        let stream = TestStream::unbounded(|i| if i == 0 { Test::succeed_at(1) } else { Test::diverge() });
        let report = run_any(&stream, Fuel::Steps(1)).unwrap();
        assert_eq!(
            report.outcome,
            RunOutcome::Success {
                winner_index: 1,
                round: 1
            }
        );
        assert_eq!(report.total_steps, 1);
    }

    #[test]
    fn all_diverge_stream_exhausts_fuel() {
        let stream = TestStream::unbounded(|_| Test::diverge());
        let report = run_any(&stream, Fuel::Steps(1000)).unwrap();
        assert_eq!(report.outcome, RunOutcome::Exhausted);
        assert_eq!(report.total_steps, 1000);
        // 1 + 4 + 9 + ... + 169 = 819 < 1000 < 1015
        assert_eq!(report.rounds_completed, 13);
    }

    #[test]
    fn fresh_restart_each_round() {
        // Position 1 needs 3 steps; it is restarted with budgets 1, 2, then 3.
        let stream = TestStream::finite(vec![succeed(3)]).unwrap();
        let report = run_any(&stream, Fuel::Unbounded).unwrap();
        assert_eq!(report.total_steps, 1 + 2 + 3);
        assert!(matches!(report.outcome, RunOutcome::Success { round: 3, .. }));
    }

    #[test]
    fn step_bound_formula() {
        assert_eq!(dovetail_step_bound(1), 1);
        assert_eq!(dovetail_step_bound(5), 55);
        assert_eq!(
            dovetail_step_bound(20),
            (1..=20u64).map(|n| n * n).sum::<u64>()
        );
    }

    #[test]
    #[should_panic(expected = "after it succeeded")]
    fn stepping_past_success_panics() {
        let mut run = SequentialRun::new(vec![Test::from(Script::succeed_at(1))].into());
        assert_eq!(run.step(), StepOutcome::Succeeded);
        run.step();
    }
}

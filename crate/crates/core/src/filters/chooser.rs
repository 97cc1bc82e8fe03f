//! A memoized oracle that decides two-set partition queries the way an
//! ultrafilter on `ω` would.

use std::collections::HashMap;
use std::fmt;

use super::FilterError;
use crate::groups::{Code, DecidableSet};

/// Codes compared when memoizing and consistency-checking queries.
pub const DEFAULT_PREFIX: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChooserStrategy {
    Left,
    Right,
    /// The side whose least member is smaller; `left` on ties.
    MinCode,
    /// Decisions replayed in query order.
    Scripted(Vec<Side>),
}

impl ChooserStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            ChooserStrategy::Left => "left",
            ChooserStrategy::Right => "right",
            ChooserStrategy::MinCode => "min",
            ChooserStrategy::Scripted(_) => "script",
        }
    }
}

/// Parse a chooser script: one `left` or `right` per line. Blank lines are skipped.
pub fn parse_chooser_script(text: &str) -> Result<Vec<Side>, FilterError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| match line.trim() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(FilterError::ScriptFormat {
                line: i + 1,
                found: other.to_string(),
            }),
        })
        .collect()
}

/// One answered query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub left: String,
    pub right: String,
    pub side: Side,
}

#[derive(Clone, Debug)]
struct Recorded {
    chosen: Vec<bool>,
    rejected: Vec<bool>,
}

/// Stateful chooser. Callers must serialize access; cloning snapshots the
/// memo and script position.
#[derive(Clone, Debug)]
pub struct UltraChooser {
    strategy: ChooserStrategy,
    prefix: usize,
    cursor: usize,
    memo: HashMap<(Vec<bool>, Vec<bool>), Side>,
    record: Vec<Recorded>,
    log: Vec<Decision>,
}

fn subset_on_prefix(a: &[bool], b: &[bool]) -> bool {
    a.iter().any(|&x| x) && a.iter().zip(b).all(|(&x, &y)| !x || y)
}

impl UltraChooser {
    pub fn new(strategy: ChooserStrategy) -> Self {
        UltraChooser {
            strategy,
            prefix: DEFAULT_PREFIX,
            cursor: 0,
            memo: HashMap::new(),
            record: Vec::new(),
            log: Vec::new(),
        }
    }

    pub fn left() -> Self {
        UltraChooser::new(ChooserStrategy::Left)
    }

    pub fn right() -> Self {
        UltraChooser::new(ChooserStrategy::Right)
    }

    pub fn min_code() -> Self {
        UltraChooser::new(ChooserStrategy::MinCode)
    }

    pub fn scripted(sides: Vec<Side>) -> Self {
        UltraChooser::new(ChooserStrategy::Scripted(sides))
    }

    #[must_use]
    pub fn with_prefix(mut self, prefix: usize) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn strategy(&self) -> &ChooserStrategy {
        &self.strategy
    }

    pub fn prefix(&self) -> usize {
        self.prefix
    }

    /// Every decision made so far, in query order.
    pub fn decisions(&self) -> &[Decision] {
        &self.log
    }

    /// Decide which of `left`, `right` (meant to cover `ω`) belongs to the
    /// ultrafilter.
    pub fn choose(&mut self, left: &DecidableSet, right: &DecidableSet) -> Result<Side, FilterError> {
        let fl = left.fingerprint(self.prefix);
        let fr = right.fingerprint(self.prefix);
        if let Some(&side) = self.memo.get(&(fl.clone(), fr.clone())) {
            return Ok(side);
        }
        if let Some(&side) = self.memo.get(&(fr.clone(), fl.clone())) {
            return Ok(side.flip());
        }
        let side = self.fresh_decision(left, right)?;
        let (chosen, rejected) = match side {
            Side::Left => (fl.clone(), fr.clone()),
            Side::Right => (fr.clone(), fl.clone()),
        };
        self.check_consistent(&chosen, &rejected)?;
        self.record.push(Recorded { chosen, rejected });
        self.memo.insert((fl, fr), side);
        self.log.push(Decision {
            left: left.label().to_string(),
            right: right.label().to_string(),
            side,
        });
        Ok(side)
    }

    fn fresh_decision(&mut self, left: &DecidableSet, right: &DecidableSet) -> Result<Side, FilterError> {
        match &self.strategy {
            ChooserStrategy::Left => Ok(Side::Left),
            ChooserStrategy::Right => Ok(Side::Right),
            ChooserStrategy::MinCode => {
                let least = |s: &DecidableSet| s.next_member(Code::ZERO).map_or(u128::MAX, Code::get);
                Ok(if least(right) < least(left) {
                    Side::Right
                } else {
                    Side::Left
                })
            }
            ChooserStrategy::Scripted(sides) => {
                let side = *sides
                    .get(self.cursor)
                    .ok_or(FilterError::ScriptExhausted { query: self.cursor })?;
                self.cursor += 1;
                Ok(side)
            }
        }
    }

    /// A chosen set may not sit inside a rejected one, and a rejected set may
    /// not contain a chosen one, on the compared prefix.
    fn check_consistent(&self, chosen: &[bool], rejected: &[bool]) -> Result<(), FilterError> {
        for (i, past) in self.record.iter().enumerate() {
            if subset_on_prefix(chosen, &past.rejected) {
                return Err(FilterError::Contradiction(format!(
                    "new choice lies inside the set rejected by query {i}"
                )));
            }
            if subset_on_prefix(&past.chosen, rejected) {
                return Err(FilterError::Contradiction(format!(
                    "new rejection contains the set chosen by query {i}"
                )));
            }
        }
        Ok(())
    }
}

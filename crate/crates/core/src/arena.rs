//! Game mechanics: variants, cop moves, robber responses, contamination
//! updates and the robber-monotonicity test.
//!
//! Moves follow the helicopter convention. Cops announce their next
//! placement `C'`; while they are in the air the robber may run along any
//! directed path that avoids the cops staying put (`C ∩ C'`) and must end
//! outside `C'`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{Digraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArenaError {
    #[error("unsupported game variant: {0}")]
    UnsupportedVariant(String),
    #[error("unknown game variant `{0}` (expected visible, visible-scc, inert or invisible-fast)")]
    UnknownVariant(String),
    #[error("cop budget {k} exceeds vertex count {n}")]
    BudgetTooLarge { k: usize, n: usize },
    #[error("robber at {robber} stands on a cop vertex")]
    RobberOnCop { robber: usize },
    #[error("contaminated set {contaminated} meets cop set {cops}")]
    ContaminatedCop {
        cops: VertexSet,
        contaminated: VertexSet,
    },
    #[error("{count} cops exceed budget {k}")]
    TooManyCops { count: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Visibility {
    Visible,
    Invisible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Agility {
    Fast,
    Lazy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Confinement {
    Reachability,
    /// The robber may only move inside its strong component of `D ∖ (C ∩ C')`.
    StrongComponent,
}

/// A supported combination of robber visibility, agility and confinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameVariant {
    visibility: Visibility,
    agility: Agility,
    confinement: Confinement,
}

impl GameVariant {
    /// Visible fast robber; its monotone cop number is DAG-width.
    pub const VISIBLE: GameVariant = GameVariant {
        visibility: Visibility::Visible,
        agility: Agility::Fast,
        confinement: Confinement::Reachability,
    };
    /// Invisible inert (lazy) robber; its monotone cop number is Kelly-width.
    pub const INERT: GameVariant = GameVariant {
        visibility: Visibility::Invisible,
        agility: Agility::Lazy,
        confinement: Confinement::Reachability,
    };
    /// Invisible fast robber, the directed path-width game (extension).
    pub const INVISIBLE_FAST: GameVariant = GameVariant {
        visibility: Visibility::Invisible,
        agility: Agility::Fast,
        confinement: Confinement::Reachability,
    };
    /// Visible fast robber confined to its strong component (extension).
    pub const VISIBLE_SCC: GameVariant = GameVariant {
        visibility: Visibility::Visible,
        agility: Agility::Fast,
        confinement: Confinement::StrongComponent,
    };

    pub fn new(
        visibility: Visibility,
        agility: Agility,
        confinement: Confinement,
    ) -> Result<Self, ArenaError> {
        let v = GameVariant {
            visibility,
            agility,
            confinement,
        };
        match (visibility, agility, confinement) {
            (Visibility::Visible, Agility::Lazy, _) => Err(ArenaError::UnsupportedVariant(
                "a visible lazy robber is not supported".into(),
            )),
            (Visibility::Invisible, _, Confinement::StrongComponent) => {
                Err(ArenaError::UnsupportedVariant(
                    "strong-component confinement needs a visible fast robber".into(),
                ))
            }
            _ => Ok(v),
        }
    }

    pub fn visibility(self) -> Visibility {
        self.visibility
    }

    pub fn agility(self) -> Agility {
        self.agility
    }

    pub fn confinement(self) -> Confinement {
        self.confinement
    }

    pub fn is_visible(self) -> bool {
        self.visibility == Visibility::Visible
    }

    /// Variants beyond the two games the non-monotonicity results concern.
    pub fn is_extension(self) -> bool {
        self != Self::VISIBLE && self != Self::INERT
    }

    pub fn name(self) -> &'static str {
        match (self.visibility, self.agility, self.confinement) {
            (Visibility::Visible, _, Confinement::Reachability) => "visible",
            (Visibility::Visible, _, Confinement::StrongComponent) => "visible-scc",
            (Visibility::Invisible, Agility::Lazy, _) => "inert",
            (Visibility::Invisible, Agility::Fast, _) => "invisible-fast",
        }
    }
}

impl fmt::Display for GameVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameVariant {
    type Err = ArenaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "visible" | "visible-fast" => Ok(Self::VISIBLE),
            "visible-scc" => Ok(Self::VISIBLE_SCC),
            "inert" | "lazy" | "invisible-lazy" => Ok(Self::INERT),
            "invisible-fast" | "dpw" => Ok(Self::INVISIBLE_FAST),
            "visible-lazy" | "visible-inert" => Err(ArenaError::UnsupportedVariant(
                "a visible lazy robber is not supported".into(),
            )),
            other => Err(ArenaError::UnknownVariant(other.to_string())),
        }
    }
}

impl Serialize for GameVariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GameVariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of cops available; at most the vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CopBudget(usize);

impl CopBudget {
    pub fn new(k: usize, d: &Digraph) -> Result<Self, ArenaError> {
        let n = d.vertex_count();
        if k > n {
            return Err(ArenaError::BudgetTooLarge { k, n });
        }
        Ok(CopBudget(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VisiblePosition {
    cops: VertexSet,
    robber: usize,
}

impl VisiblePosition {
    pub fn new(cops: VertexSet, robber: usize) -> Result<Self, ArenaError> {
        if cops.contains(robber) {
            return Err(ArenaError::RobberOnCop { robber });
        }
        Ok(VisiblePosition { cops, robber })
    }

    pub fn cops(self) -> VertexSet {
        self.cops
    }

    pub fn robber(self) -> usize {
        self.robber
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ContaminationState {
    cops: VertexSet,
    contaminated: VertexSet,
}

impl ContaminationState {
    pub fn new(cops: VertexSet, contaminated: VertexSet) -> Result<Self, ArenaError> {
        if !cops.is_disjoint(contaminated) {
            return Err(ArenaError::ContaminatedCop { cops, contaminated });
        }
        Ok(ContaminationState { cops, contaminated })
    }

    pub fn cops(self) -> VertexSet {
        self.cops
    }

    pub fn contaminated(self) -> VertexSet {
        self.contaminated
    }

    pub fn is_cleared(self) -> bool {
        self.contaminated.is_empty()
    }
}

/// All cop placements of size at most `k`, each once, in lexicographic
/// order of their member lists.
pub fn cop_moves(d: &Digraph, k: CopBudget) -> Vec<VertexSet> {
    subsets_up_to(d.vertex_count(), k.get())
}

pub(crate) fn subsets_up_to(n: usize, k: usize) -> Vec<VertexSet> {
    fn extend(n: usize, k: usize, from: usize, cur: VertexSet, out: &mut Vec<VertexSet>) {
        out.push(cur);
        if cur.len() == k {
            return;
        }
        for v in from..n {
            extend(n, k, v + 1, cur.with(v), out);
        }
    }
    let mut out = Vec::new();
    extend(n, k.min(n), 0, VertexSet::EMPTY, &mut out);
    out
}

/// Where a visible robber at `robber` can land when the cops move from
/// `cops` to `next`. Empty means capture.
pub fn robber_options(
    d: &Digraph,
    cops: VertexSet,
    next: VertexSet,
    robber: usize,
    confinement: Confinement,
) -> VertexSet {
    let staying = cops & next;
    let mut reachable = d.reach(VertexSet::singleton(robber), staying);
    if confinement == Confinement::StrongComponent {
        reachable = reachable & d.scc_of(robber, staying);
    }
    reachable - next
}

/// Contamination after the cops move from `cops` to `next`.
///
/// An inert robber only runs when a cop is about to land on him, so only
/// contaminated vertices in `next` spread. A fast robber may move every round.
pub fn contaminate(
    d: &Digraph,
    cops: VertexSet,
    next: VertexSet,
    contaminated: VertexSet,
    agility: Agility,
) -> VertexSet {
    let staying = cops & next;
    let spread = match agility {
        Agility::Lazy => contaminated | d.reach(contaminated & next, staying),
        Agility::Fast => d.reach(contaminated, staying),
    };
    spread - next
}

/// The territory of a visible robber at `robber` while the cops sit on `cops`.
pub fn robber_space(d: &Digraph, cops: VertexSet, robber: usize) -> VertexSet {
    d.reach(VertexSet::singleton(robber), cops)
}

/// A step is monotone when the robber's territory (or the contaminated
/// set) does not grow.
pub fn is_monotone_transition(old: VertexSet, new: VertexSet) -> bool {
    new.is_subset(old)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialState {
    /// No cops are placed and the robber picks any of these vertices.
    Visible {
        robber_choices: VertexSet,
    },
    Invisible(ContaminationState),
}

pub fn initial_state(d: &Digraph, variant: GameVariant) -> InitialState {
    if variant.is_visible() {
        InitialState::Visible {
            robber_choices: d.vertices(),
        }
    } else {
        InitialState::Invisible(ContaminationState {
            cops: VertexSet::EMPTY,
            contaminated: d.vertices(),
        })
    }
}

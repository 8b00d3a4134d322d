use thiserror::Error;

use crate::model::{Family, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{family} requires a larger arity than {arity}")]
    InvalidArity { family: Family, arity: usize },
    #[error("unknown family tag `{0}`")]
    UnknownFamily(String),
    #[error("constraint must have {expected} members, found {found}")]
    WrongMemberCount { expected: usize, found: usize },
    #[error("constraint members {0:?} are not strictly increasing")]
    UnsortedMembers(Vec<Vertex>),
    #[error("selected vertex {vertex} is not a member of {members:?}")]
    SelectionNotMember { vertex: Vertex, members: Vec<Vertex> },
    #[error("malformed selected data for constraint {0:?}")]
    DegenerateSelection(Vec<Vertex>),
    #[error("expected a {expected} constraint, found {found}")]
    FamilyMismatch { expected: Family, found: Family },
    #[error("vertex {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("no constraint for subset {0:?}")]
    MissingConstraint(Vec<Vertex>),
    #[error("subset {0:?} appears more than once")]
    DuplicateConstraint(Vec<Vertex>),
    #[error("vertex subset contains a repeated vertex")]
    DuplicateVertex,
    #[error("subset of {size} vertices induces no constraint of arity {arity}")]
    SubsetTooSmall { size: usize, arity: usize },
    #[error("ranking covers {found} vertices but the instance has {expected}")]
    DomainMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("refusing to enumerate {n}! rankings (cap is {cap} vertices)")]
    TooLarge { n: usize, cap: usize },
}

pub mod kernel;
pub mod triangle;
pub mod ajima;
pub mod apollonius;
pub mod identities;
pub mod outcome;
pub mod svg;
pub mod verify;
pub mod cli;

pub mod bench;
pub mod bounds;
pub mod catalog;
pub mod eval;
pub mod search;
pub mod table;

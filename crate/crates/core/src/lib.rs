pub mod analysis;
pub mod automaton;
pub mod coloring;
pub mod geometry;
pub mod lattice;
pub mod seeds;

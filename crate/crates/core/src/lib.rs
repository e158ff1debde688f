pub mod apps;
pub mod bd;
pub mod bitset;
pub mod bounded;
pub mod bundled;
pub mod error;
pub mod gen;
pub mod grammar;
pub mod matrix;
pub mod parser;
pub mod product;
pub mod score;

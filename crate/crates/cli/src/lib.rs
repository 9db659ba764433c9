//! File formats, the bundled example corpus and the command-line front end
//! for `homnorden-core`.

pub mod app;
pub mod corpus;
pub mod document;
pub mod render;

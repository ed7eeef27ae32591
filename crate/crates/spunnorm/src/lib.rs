//! File formats, bundled examples, reports and the self test for the
//! `spunnorm` command line tool.

pub mod bundled;
pub mod format;
pub mod report;
pub mod selftest;

pub mod croft;
pub mod k6;
pub mod k5;

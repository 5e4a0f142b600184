pub mod coxeter;
pub mod error;
pub mod filtered_complex;
pub mod homalg;
pub mod laurent;
pub mod matrix;
pub mod series_window;
pub mod subset;

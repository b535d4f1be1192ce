pub mod applications;
pub mod diophantus;
pub mod infinitesimal;
pub mod kernel;
pub mod numeric;
pub mod symexpr;

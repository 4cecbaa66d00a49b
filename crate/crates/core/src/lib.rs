pub mod poly;
pub mod lie;
pub mod poisson;
pub mod veronese;
pub mod random;
pub mod checks;

pub mod abelian;
pub mod catalog;
pub mod cli;
pub mod exec;
pub mod polyring;
pub mod transfer;
pub mod verifier;
pub mod zgroebner;

//! Separability machinery for amalgamated free products with finite (or
//! free) factors.

pub mod amalgam;
pub mod arith;
pub mod catalog;
pub mod compat;
pub mod engine;
pub mod fingrp;
pub mod freegrp;

#![no_std]
extern crate alloc;

pub mod exactalg;
pub mod gridmod;
pub mod structure;
pub mod barcode1;
pub mod noise;
pub mod fcf;
pub mod denoise;
pub mod catalog;

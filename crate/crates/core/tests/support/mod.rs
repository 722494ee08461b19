#![allow(dead_code)]

pub mod mp;

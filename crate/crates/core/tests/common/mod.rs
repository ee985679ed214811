#![allow(dead_code)]

pub mod bicond;
pub mod gen;
pub mod oracle;
pub mod props;

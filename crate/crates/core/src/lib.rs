pub mod cyclotomic;
pub mod error;
pub mod poly;
pub mod rat;
pub mod display;
pub mod sector;
pub mod virtual_ring;
pub mod localization;
pub mod linalg;
pub mod line_elements;
pub mod presentation;
pub mod par;
pub mod verify;

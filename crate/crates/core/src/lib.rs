pub mod betti;
pub mod chambers;
pub mod exactpoly;
pub mod stability;
pub mod verify;

pub mod algprops;
pub mod catalogue;
pub mod degeneration;
pub mod fields;
pub mod hasse;
pub mod linalg;
pub mod polyring;
pub mod ring;
pub mod structspace;
pub mod text;

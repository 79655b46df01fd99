pub mod combinat;

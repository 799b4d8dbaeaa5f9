//! Application drivers. Placeholder.

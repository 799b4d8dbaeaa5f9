//! Movies of elementary moves. Placeholder.

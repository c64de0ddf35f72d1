"""Services: move generation, search, certificates, games and reports."""

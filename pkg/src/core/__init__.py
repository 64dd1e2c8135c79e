# Core: errors, settings and logging setup

# Report server module for publishing analysis reports

"""The pipeline language: AST, pyparsing grammar and compiler."""

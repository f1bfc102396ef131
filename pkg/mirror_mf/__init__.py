# Mirror Matrix Factorization Verifier Package

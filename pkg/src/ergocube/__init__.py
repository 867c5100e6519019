"""ergocube: agent-based market models, an 18-moment SMM estimator, and a
Monte Carlo (T, N, R) experiment harness for studying broken ergodicity.

Subpackage map:

- :mod:`ergocube.models`   — seed-driven simulators (sentiment-herding model,
  discrete-choice chartist/fundamentalist model, Wiener fixture)
- :mod:`ergocube.moments`  — the registry of 18 moment functions plus the
  time-average / ensemble-average / pooled aggregation schemes
- :mod:`ergocube.smm`      — distance, weighting matrix, objective, Sobol
  candidate search and objective surfaces
- :mod:`ergocube.stats`    — KS normality check, one-tailed paired t-test,
  RMSE, covariance and SPD inversion
- :mod:`ergocube.harness`  — experiment drivers over the (T, N, R) cube
- :mod:`ergocube.cli`      — command-line front end emitting CSV tables
"""

__version__ = "0.1.0"

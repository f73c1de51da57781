"""Run configuration.

A configuration file is a flat YAML mapping.  Recognised keys::

    # prior
    k_max, eps1, eps2, zeta_shape, zeta_rate, a, b, pad
    # proposal tuning
    tau1, tau2, tau3, tau4, tau5, tau_w, alpha, adapt,
    target_accept, target_accept_scalar, coeff_block
    # schedule
    burn_in, iters, thin
    # two-level pipeline
    main_period, sub_period, min_dwell_minutes, sub_states, v_mode,
    v_draws, zero_inflated, restrict_to_bouts

Missing keys take the defaults of PriorConfig, TuningParams, Schedule and
PipelineConfig.  Command-line flags override file values.
"""

from __future__ import print_function, division
import logging

import yaml
from six import iteritems

from .prior import PriorConfig
from .sampler.tuning import TuningParams, Schedule
from .conditional import PipelineConfig
from .exceptions import ConfigError, SplineHMMError

logger = logging.getLogger(__name__)

PRIOR_KEYS = ('k_max', 'eps1', 'eps2', 'zeta_shape', 'zeta_rate', 'a', 'b',
              'pad')
TUNING_KEYS = ('tau1', 'tau2', 'tau3', 'tau4', 'tau5', 'tau_w', 'alpha',
               'adapt', 'target_accept', 'target_accept_scalar',
               'coeff_block')
SCHEDULE_KEYS = ('burn_in', 'iters', 'thin')
PIPELINE_KEYS = ('main_period', 'sub_period', 'min_dwell_minutes',
                 'sub_states', 'v_mode', 'v_draws', 'zero_inflated',
                 'restrict_to_bouts')
KNOWN_KEYS = PRIOR_KEYS + TUNING_KEYS + SCHEDULE_KEYS + PIPELINE_KEYS


class RunConfig(object):
    """All settings of a run, as flat key-value pairs.

    Attributes
    ----------
    values : dict
        Only the keys that were set; everything else takes its default.
    """

    def __init__(self, values=None):
        self.values = {}
        self.update(values or {})

    def update(self, values):
        """Sets keys, ignoring None values.

        Raises
        ------
        ConfigError naming the first unknown key.
        """
        for key, value in iteritems(values):
            if key not in KNOWN_KEYS:
                raise ConfigError(key)
            if value is not None:
                self.values[key] = value
        return self

    def _pick(self, keys):
        return {key: self.values[key] for key in keys if key in self.values}

    def _build(self, cls, kwargs):
        try:
            return cls(**kwargs)
        except SplineHMMError:
            raise
        except (TypeError, ValueError) as error:
            key = sorted(kwargs)[0] if kwargs else cls.__name__
            raise ConfigError(key, "invalid {}: {}".format(cls.__name__,
                                                           error))

    @property
    def prior(self):
        kwargs = self._pick(PRIOR_KEYS)
        a, b = kwargs.pop('a', None), kwargs.pop('b', None)
        if (a is None) != (b is None):
            raise ConfigError('a' if a is None else 'b',
                              "bounds need both 'a' and 'b'")
        if a is not None:
            kwargs['bounds'] = (a, b)
        return self._build(PriorConfig, kwargs)

    @property
    def tuning(self):
        return self._build(TuningParams, self._pick(TUNING_KEYS))

    @property
    def schedule(self):
        return self._build(Schedule, self._pick(SCHEDULE_KEYS))

    @property
    def pipeline(self):
        pipeline = self._build(PipelineConfig, self._pick(PIPELINE_KEYS))
        try:
            return pipeline.check()
        except ValueError as error:
            raise ConfigError('pipeline', str(error))

    def check(self):
        """Builds every config object once so that bad values fail early."""
        for part in ('prior', 'tuning', 'schedule', 'pipeline'):
            getattr(self, part)
        return self

    def to_dict(self):
        d = {}
        d.update(self.prior.to_dict())
        d.update(self.tuning.to_dict())
        d.update(self.schedule.to_dict())
        d.update(self.pipeline.to_dict())
        return d


def load_config(filename=None, overrides=None):
    """Reads a YAML configuration file and applies `overrides`.

    Parameters
    ----------
    filename : str, optional
    overrides : dict, optional
        Values from the command line; None values are ignored.

    Returns
    -------
    RunConfig

    Raises
    ------
    ConfigError for unknown keys or invalid values.
    """
    values = {}
    if filename is not None:
        with open(filename) as config_file:
            try:
                values = yaml.safe_load(config_file) or {}
            except yaml.YAMLError as error:
                raise ConfigError(filename, "cannot parse YAML: {}".format(
                    error))
        if not isinstance(values, dict):
            raise ConfigError(filename, "expected a mapping of keys to"
                              " values")
        logger.info("Loaded %d setting(s) from %s", len(values), filename)
    config = RunConfig(values)
    if overrides:
        config.update(overrides)
    return config.check()

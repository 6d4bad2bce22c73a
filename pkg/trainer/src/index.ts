export { ConfigError, DataError } from './errors';
export { ClassMetrics, MetricsReport, computeMetrics } from './metrics';
export { Dataset, Sample, loadDataset, readImage } from './data';
export { SUPPORTED_OPTIMIZERS, buildModel, createOptimizer } from './model';
export { DEFAULTS, TrainOptions, TrainResult, trainAndEvaluate } from './train';

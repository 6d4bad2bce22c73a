/**
 * Training loop: fit the small CNN on the train split, score the test split.
 */

import * as tf from '@tensorflow/tfjs';
import { Dataset, Sample, loadDataset } from './data';
import { ConfigError } from './errors';
import { MetricsReport, computeMetrics } from './metrics';
import { buildModel, createOptimizer } from './model';

export interface TrainOptions {
  dataDir: string;
  epochs?: number;
  learningRate?: number;
  optimizer?: string;
  seed?: number;
  imageSize?: number;
  batchSize?: number;
  /** Called after each epoch with the running loss, for progress output. */
  onEpoch?: (epoch: number, loss: number) => void;
}

export interface TrainResult {
  metrics: MetricsReport;
  classNames: string[];
  epochs: number;
  finalLoss: number;
  trainSize: number;
  testSize: number;
}

export const DEFAULTS = {
  epochs: 30,
  learningRate: 1e-3,
  optimizer: 'adam',
  seed: 0,
  imageSize: 32,
  batchSize: 16,
};

function requirePositiveInt(value: number, what: string): number {
  if (!Number.isInteger(value) || value <= 0) {
    throw new ConfigError(`${what} must be a positive integer, got ${value}`);
  }
  return value;
}

/** Stack samples into an image batch tensor and a one-hot label tensor. */
function toTensors(samples: Sample[], imageSize: number, numClasses: number) {
  const pixelsPer = imageSize * imageSize;
  const flat = new Float32Array(samples.length * pixelsPer);
  for (let i = 0; i < samples.length; i++) {
    flat.set(samples[i].pixels, i * pixelsPer);
  }
  const xs = tf.tensor4d(flat, [samples.length, imageSize, imageSize, 1]);
  const labels = tf.tensor1d(
    samples.map((s) => s.label),
    'int32'
  );
  const ys = tf.oneHot(labels, numClasses);
  labels.dispose();
  return { xs, ys };
}

/**
 * Train on the dataset's train split and evaluate on its test split.
 *
 * Runs on the pure-JS CPU backend with seeded initialization and no batch
 * shuffling, so a fixed seed reproduces the reported metrics exactly.
 */
export async function trainAndEvaluate(options: TrainOptions): Promise<TrainResult> {
  const epochs = requirePositiveInt(options.epochs ?? DEFAULTS.epochs, 'epochs');
  const batchSize = requirePositiveInt(options.batchSize ?? DEFAULTS.batchSize, 'batch size');
  const imageSize = requirePositiveInt(options.imageSize ?? DEFAULTS.imageSize, 'image size');
  const seed = options.seed ?? DEFAULTS.seed;
  if (!Number.isInteger(seed)) {
    throw new ConfigError(`seed must be an integer, got ${seed}`);
  }
  const learningRate = options.learningRate ?? DEFAULTS.learningRate;
  if (!Number.isFinite(learningRate) || learningRate <= 0) {
    throw new ConfigError(`learning rate must be positive, got ${learningRate}`);
  }
  // resolve the optimizer before touching the filesystem so config errors win
  const optimizer = createOptimizer(options.optimizer ?? DEFAULTS.optimizer, learningRate);

  await tf.setBackend('cpu');
  await tf.ready();

  const dataset: Dataset = loadDataset(options.dataDir, imageSize);
  const numClasses = dataset.classNames.length;

  const model = buildModel(imageSize, numClasses, seed);
  model.compile({ optimizer, loss: 'categoricalCrossentropy', metrics: ['accuracy'] });

  const trainT = toTensors(dataset.train, imageSize, numClasses);
  const testT = toTensors(dataset.test, imageSize, numClasses);
  try {
    const history = await model.fit(trainT.xs, trainT.ys, {
      epochs,
      batchSize,
      shuffle: false,
      verbose: 0,
      callbacks: options.onEpoch
        ? {
            onEpochEnd: (epoch, logs) => {
              options.onEpoch!(epoch + 1, logs ? (logs.loss as number) : NaN);
            },
          }
        : undefined,
    });
    const losses = history.history.loss as number[];

    const probs = model.predict(testT.xs) as tf.Tensor;
    const predT = probs.argMax(-1);
    const predictions = Array.from(predT.dataSync());
    probs.dispose();
    predT.dispose();

    const labels = dataset.test.map((s) => s.label);
    const metrics = computeMetrics(predictions, labels, numClasses);
    return {
      metrics,
      classNames: dataset.classNames,
      epochs,
      finalLoss: losses[losses.length - 1],
      trainSize: dataset.train.length,
      testSize: dataset.test.length,
    };
  } finally {
    trainT.xs.dispose();
    trainT.ys.dispose();
    testT.xs.dispose();
    testT.ys.dispose();
    model.dispose();
  }
}

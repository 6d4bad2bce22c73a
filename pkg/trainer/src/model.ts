/**
 * Small convolutional classifier and the optimizer factory.
 */

import * as tf from '@tensorflow/tfjs';
import { ConfigError } from './errors';

export const SUPPORTED_OPTIMIZERS = ['sgd', 'adam', 'adamax', 'adadelta', 'adagrad'] as const;

/**
 * Build an optimizer by name. Names are case-insensitive; anything outside
 * the supported set is a configuration error.
 */
export function createOptimizer(name: string, learningRate: number): tf.Optimizer {
  switch (name.toLowerCase()) {
    case 'sgd':
      return tf.train.sgd(learningRate);
    case 'adam':
      return tf.train.adam(learningRate);
    case 'adamax':
      return tf.train.adamax(learningRate);
    case 'adadelta':
      return tf.train.adadelta(learningRate);
    case 'adagrad':
      return tf.train.adagrad(learningRate);
    default:
      throw new ConfigError(
        `unknown optimizer "${name}" (supported: ${SUPPORTED_OPTIMIZERS.join(', ')})`
      );
  }
}

/**
 * Two conv blocks plus a small dense head. All kernels use seeded He
 * initialization so a fixed seed reproduces the same starting weights.
 */
export function buildModel(imageSize: number, numClasses: number, seed: number): tf.Sequential {
  const model = tf.sequential();
  model.add(
    tf.layers.conv2d({
      inputShape: [imageSize, imageSize, 1],
      filters: 8,
      kernelSize: 3,
      padding: 'same',
      activation: 'relu',
      kernelInitializer: tf.initializers.heNormal({ seed }),
    })
  );
  model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
  model.add(
    tf.layers.conv2d({
      filters: 16,
      kernelSize: 3,
      padding: 'same',
      activation: 'relu',
      kernelInitializer: tf.initializers.heNormal({ seed: seed + 1 }),
    })
  );
  model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
  model.add(tf.layers.flatten());
  model.add(
    tf.layers.dense({
      units: 32,
      activation: 'relu',
      kernelInitializer: tf.initializers.heNormal({ seed: seed + 2 }),
    })
  );
  model.add(
    tf.layers.dense({
      units: numClasses,
      activation: 'softmax',
      kernelInitializer: tf.initializers.heNormal({ seed: seed + 3 }),
    })
  );
  return model;
}

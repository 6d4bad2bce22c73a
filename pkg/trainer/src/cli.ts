#!/usr/bin/env node
/**
 * Command line entry point.
 *
 * trainer --data DIR [--epochs E] [--lr L] [--optimizer NAME] [--seed S]
 *         [--image-size PX] [--report out.json]
 */

import { writeFileSync } from 'fs';
import { parseArgs } from 'node:util';
import { ConfigError, DataError } from './errors';
import { SUPPORTED_OPTIMIZERS } from './model';
import { DEFAULTS, trainAndEvaluate } from './train';

const USAGE = `usage: trainer --data DIR [options]

Train a small convolutional classifier on an encoded image tree
(train/<label>/*.png plus test/<label>/*.png, with an optional
manifest.json) and print test-split metrics.

options:
  --data DIR        dataset directory (required)
  --epochs E        training epochs (default ${DEFAULTS.epochs})
  --lr L            learning rate (default ${DEFAULTS.learningRate})
  --optimizer NAME  one of ${SUPPORTED_OPTIMIZERS.join(', ')} (default ${DEFAULTS.optimizer})
  --seed S          integer seed for weight initialization (default ${DEFAULTS.seed})
  --image-size PX   square side images are resampled to (default ${DEFAULTS.imageSize})
  --report FILE     also write the full metrics report as JSON
  -h, --help        show this message

exit codes: 0 success, 2 configuration error, 3 data error, 1 unexpected failure`;

function numberFlag(raw: string | undefined, what: string): number | undefined {
  if (raw === undefined) return undefined;
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new ConfigError(`${what} must be a number, got "${raw}"`);
  }
  return value;
}

async function main(): Promise<void> {
  let values: Record<string, string | boolean | undefined>;
  try {
    ({ values } = parseArgs({
      options: {
        data: { type: 'string' },
        epochs: { type: 'string' },
        lr: { type: 'string' },
        optimizer: { type: 'string' },
        seed: { type: 'string' },
        'image-size': { type: 'string' },
        report: { type: 'string' },
        help: { type: 'boolean', short: 'h' },
      },
    }));
  } catch (e) {
    throw new ConfigError((e as Error).message);
  }

  if (values.help) {
    console.log(USAGE);
    return;
  }
  if (typeof values.data !== 'string') {
    throw new ConfigError('--data is required (see --help)');
  }

  const result = await trainAndEvaluate({
    dataDir: values.data,
    epochs: numberFlag(values.epochs as string | undefined, 'epochs'),
    learningRate: numberFlag(values.lr as string | undefined, 'learning rate'),
    optimizer: values.optimizer as string | undefined,
    seed: numberFlag(values.seed as string | undefined, 'seed'),
    imageSize: numberFlag(values['image-size'] as string | undefined, 'image size'),
    onEpoch: (epoch, loss) => {
      console.log(`epoch ${epoch}: loss ${loss.toFixed(4)}`);
    },
  });

  const m = result.metrics;
  console.log(`classes: ${result.classNames.join(', ')}`);
  console.log(`train/test: ${result.trainSize}/${result.testSize}`);
  console.log(
    `accuracy ${m.accuracy.toFixed(4)}  sensitivity ${m.sensitivity.toFixed(4)}  ` +
      `specificity ${m.specificity.toFixed(4)}  precision ${m.precision.toFixed(4)}  ` +
      `f1 ${m.f1.toFixed(4)}`
  );

  if (typeof values.report === 'string') {
    const report = {
      metrics: result.metrics,
      classNames: result.classNames,
      epochs: result.epochs,
      finalLoss: result.finalLoss,
      trainSize: result.trainSize,
      testSize: result.testSize,
    };
    writeFileSync(values.report, JSON.stringify(report, null, 2) + '\n');
    console.log(`report written to ${values.report}`);
  }
}

main().catch((e) => {
  if (e instanceof ConfigError) {
    console.error(`config error: ${e.message}`);
    process.exit(2);
  }
  if (e instanceof DataError) {
    console.error(`data error: ${e.message}`);
    process.exit(3);
  }
  console.error(e);
  process.exit(1);
});

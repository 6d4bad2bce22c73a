/**
 * Confusion-matrix metrics for classifier evaluation.
 *
 * Binary problems treat class index 1 as the positive class and report its
 * one-vs-rest numbers at the top level. Multiclass problems report macro
 * averages at the top level plus a per-class one-vs-rest breakdown. Any
 * ratio with a zero denominator is reported as 0.
 */

export interface ClassMetrics {
  accuracy: number;
  sensitivity: number;
  specificity: number;
  precision: number;
  f1: number;
}

export interface MetricsReport extends ClassMetrics {
  /** One-vs-rest breakdown, indexed by class. */
  perClass: ClassMetrics[];
}

/**
 * Count the one-vs-rest confusion cells for one class.
 */
function confusionFor(
  predictions: number[],
  labels: number[],
  cls: number
): { tp: number; fp: number; fn: number; tn: number } {
  let tp = 0;
  let fp = 0;
  let fn = 0;
  let tn = 0;
  for (let i = 0; i < labels.length; i++) {
    const actual = labels[i] === cls;
    const predicted = predictions[i] === cls;
    if (actual && predicted) tp++;
    else if (!actual && predicted) fp++;
    else if (actual && !predicted) fn++;
    else tn++;
  }
  return { tp, fp, fn, tn };
}

/**
 * Derive the five metrics from one class's confusion cells.
 */
function metricsFromCounts(tp: number, fp: number, fn: number, tn: number): ClassMetrics {
  const n = tp + fp + fn + tn;
  const accuracy = n === 0 ? 0 : (tp + tn) / n;
  const sensitivity = tp + fn === 0 ? 0 : tp / (tp + fn);
  const specificity = tn + fp === 0 ? 0 : tn / (tn + fp);
  const precision = tp + fp === 0 ? 0 : tp / (tp + fp);
  const f1 =
    precision + sensitivity === 0 ? 0 : (2 * precision * sensitivity) / (precision + sensitivity);
  return { accuracy, sensitivity, specificity, precision, f1 };
}

/**
 * Compute accuracy, sensitivity, specificity, precision and F1 from
 * integer class predictions against ground-truth labels.
 *
 * `numClasses` defaults to one past the largest index seen in either
 * vector, with a floor of 2 so a constant vector still reads as binary.
 */
export function computeMetrics(
  predictions: number[],
  labels: number[],
  numClasses?: number
): MetricsReport {
  if (predictions.length !== labels.length) {
    throw new Error(
      `predictions and labels differ in length: ${predictions.length} vs ${labels.length}`
    );
  }
  if (labels.length === 0) {
    throw new Error('cannot compute metrics on empty vectors');
  }

  let k = numClasses ?? Math.max(...predictions, ...labels) + 1;
  if (k < 2) k = 2;
  for (let i = 0; i < labels.length; i++) {
    for (const v of [predictions[i], labels[i]]) {
      if (!Number.isInteger(v) || v < 0 || v >= k) {
        throw new Error(`class index ${v} out of range for ${k} classes`);
      }
    }
  }

  const perClass: ClassMetrics[] = [];
  for (let cls = 0; cls < k; cls++) {
    const { tp, fp, fn, tn } = confusionFor(predictions, labels, cls);
    perClass.push(metricsFromCounts(tp, fp, fn, tn));
  }

  let correct = 0;
  for (let i = 0; i < labels.length; i++) {
    if (predictions[i] === labels[i]) correct++;
  }
  const accuracy = correct / labels.length;

  if (k === 2) {
    const positive = perClass[1];
    return {
      accuracy,
      sensitivity: positive.sensitivity,
      specificity: positive.specificity,
      precision: positive.precision,
      f1: positive.f1,
      perClass,
    };
  }

  // macro averages for multiclass; accuracy stays the per-sample mean
  let sensitivity = 0;
  let specificity = 0;
  let precision = 0;
  let f1 = 0;
  for (let cls = 0; cls < k; cls++) {
    sensitivity += perClass[cls].sensitivity;
    specificity += perClass[cls].specificity;
    precision += perClass[cls].precision;
    f1 += perClass[cls].f1;
  }
  return {
    accuracy,
    sensitivity: sensitivity / k,
    specificity: specificity / k,
    precision: precision / k,
    f1: f1 / k,
    perClass,
  };
}

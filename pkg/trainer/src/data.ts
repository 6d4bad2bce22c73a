/**
 * Loader for the class-labeled image tree written by the dwtm encoder.
 *
 * The tree looks like:
 *
 *   out/
 *     manifest.json          (optional; lists every file with split + label)
 *     train/<label>/<n>.png
 *     test/<label>/<n>.png
 *
 * When manifest.json is present its file list is authoritative; otherwise
 * the split directories are scanned. Images are grayscale PNGs; only the
 * red channel is kept and scaled to [0, 1].
 */

import { existsSync, readdirSync, readFileSync, statSync } from 'fs';
import * as path from 'path';
import { PNG } from 'pngjs';
import { DataError } from './errors';

export interface Sample {
  pixels: Float32Array;
  label: number;
  file: string;
}

export interface Dataset {
  train: Sample[];
  test: Sample[];
  classNames: string[];
  imageSize: number;
}

interface FileEntry {
  file: string;
  label: string;
  split: 'train' | 'test';
}

/**
 * Decode one PNG into a square float array, nearest-neighbor resampled
 * to `size` x `size` when the stored image has a different edge length.
 */
export function readImage(file: string, size: number): Float32Array {
  let png: PNG;
  try {
    png = PNG.sync.read(readFileSync(file));
  } catch (e) {
    throw new DataError(`cannot decode ${file}: ${(e as Error).message}`);
  }
  const out = new Float32Array(size * size);
  for (let r = 0; r < size; r++) {
    const srcR = Math.floor((r * png.height) / size);
    for (let c = 0; c < size; c++) {
      const srcC = Math.floor((c * png.width) / size);
      // RGBA layout; grayscale PNGs carry the level in the red channel
      out[r * size + c] = png.data[(srcR * png.width + srcC) * 4] / 255;
    }
  }
  return out;
}

function entriesFromManifest(dir: string, manifestPath: string): FileEntry[] {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(manifestPath, 'utf-8'));
  } catch (e) {
    throw new DataError(`cannot parse ${manifestPath}: ${(e as Error).message}`);
  }
  const files = (parsed as { files?: unknown }).files;
  if (!Array.isArray(files)) {
    throw new DataError(`${manifestPath} has no "files" list`);
  }
  const entries: FileEntry[] = [];
  for (const raw of files) {
    const f = raw as { path?: string; label?: string; split?: string };
    if (typeof f.path !== 'string' || typeof f.label !== 'string') {
      throw new DataError(`${manifestPath} file entry missing path or label`);
    }
    if (f.split !== 'train' && f.split !== 'test') {
      throw new DataError(`${manifestPath} file entry has split "${f.split}"`);
    }
    entries.push({ file: path.join(dir, f.path), label: f.label, split: f.split });
  }
  return entries;
}

function entriesFromScan(dir: string): FileEntry[] {
  const entries: FileEntry[] = [];
  for (const split of ['train', 'test'] as const) {
    const splitDir = path.join(dir, split);
    if (!existsSync(splitDir)) continue;
    for (const label of readdirSync(splitDir).sort()) {
      const labelDir = path.join(splitDir, label);
      if (!statSync(labelDir).isDirectory()) continue;
      for (const name of readdirSync(labelDir).sort()) {
        if (!name.endsWith('.png')) continue;
        entries.push({ file: path.join(labelDir, name), label, split });
      }
    }
  }
  return entries;
}

/**
 * Load both splits from a dataset directory.
 *
 * Class indices follow the sorted order of the distinct label strings, so
 * they are stable across runs and across manifest/scan loading. Throws
 * DataError when the directory is missing or either split is empty.
 */
export function loadDataset(dir: string, imageSize: number): Dataset {
  if (!existsSync(dir) || !statSync(dir).isDirectory()) {
    throw new DataError(`dataset directory not found: ${dir}`);
  }
  const manifestPath = path.join(dir, 'manifest.json');
  const entries = existsSync(manifestPath)
    ? entriesFromManifest(dir, manifestPath)
    : entriesFromScan(dir);
  if (entries.length === 0) {
    throw new DataError(`no images found under ${dir}`);
  }

  // sort for a load order independent of manifest ordering quirks
  entries.sort((a, b) => (a.file < b.file ? -1 : a.file > b.file ? 1 : 0));

  const classNames = [...new Set(entries.map((e) => e.label))].sort();
  const classIndex = new Map(classNames.map((name, i) => [name, i]));

  const train: Sample[] = [];
  const test: Sample[] = [];
  for (const entry of entries) {
    const sample: Sample = {
      pixels: readImage(entry.file, imageSize),
      label: classIndex.get(entry.label)!,
      file: entry.file,
    };
    (entry.split === 'train' ? train : test).push(sample);
  }
  if (train.length === 0) throw new DataError(`train split is empty under ${dir}`);
  if (test.length === 0) throw new DataError(`test split is empty under ${dir}`);
  return { train, test, classNames, imageSize };
}

import { cpSync, mkdirSync, mkdtempSync, rmSync, writeFileSync } from 'fs';
import * as os from 'os';
import * as path from 'path';
import { PNG } from 'pngjs';
import { afterAll, describe, expect, test } from 'vitest';
import { loadDataset, readImage } from '../src/data';
import { DataError } from '../src/errors';

const IRIS = path.join(__dirname, '..', 'testdata', 'iris64');
const scratch: string[] = [];

function tempDir(): string {
  const dir = mkdtempSync(path.join(os.tmpdir(), 'trainer-data-'));
  scratch.push(dir);
  return dir;
}

afterAll(() => {
  for (const dir of scratch) rmSync(dir, { recursive: true, force: true });
});

/** Write a solid-gray square PNG, enough to exercise decoding. */
function writePng(file: string, size: number, level: number): void {
  const png = new PNG({ width: size, height: size });
  for (let i = 0; i < size * size; i++) {
    png.data[i * 4] = level;
    png.data[i * 4 + 1] = level;
    png.data[i * 4 + 2] = level;
    png.data[i * 4 + 3] = 255;
  }
  writeFileSync(file, PNG.sync.write(png));
}

describe('loadDataset on the encoded iris tree', () => {
  test('reads the manifest splits with sorted class names', () => {
    const ds = loadDataset(IRIS, 32);
    expect(ds.train).toHaveLength(128);
    expect(ds.test).toHaveLength(22);
    expect(ds.classNames).toEqual(['setosa', 'versicolor', 'virginica']);
    expect(ds.imageSize).toBe(32);
    for (const sample of [...ds.train, ...ds.test]) {
      expect(sample.pixels).toHaveLength(32 * 32);
      expect(sample.label).toBeGreaterThanOrEqual(0);
      expect(sample.label).toBeLessThan(3);
      for (const v of sample.pixels) {
        expect(v).toBeGreaterThanOrEqual(0);
        expect(v).toBeLessThanOrEqual(1);
      }
    }
  });

  test('directory scan agrees with the manifest', () => {
    const copy = tempDir();
    cpSync(IRIS, copy, { recursive: true });
    rmSync(path.join(copy, 'manifest.json'));
    const scanned = loadDataset(copy, 32);
    const viaManifest = loadDataset(IRIS, 32);
    expect(scanned.classNames).toEqual(viaManifest.classNames);
    expect(scanned.train.map((s) => path.basename(s.file))).toEqual(
      viaManifest.train.map((s) => path.basename(s.file))
    );
    expect(scanned.test.map((s) => s.label)).toEqual(viaManifest.test.map((s) => s.label));
    expect(scanned.train[0].pixels).toEqual(viaManifest.train[0].pixels);
  });

  test('keeps images intact at their native size', () => {
    const ds = loadDataset(IRIS, 64);
    expect(ds.train[0].pixels).toHaveLength(64 * 64);
  });
});

describe('readImage resampling', () => {
  test('downscale by two picks every other pixel', () => {
    const file = [...loadDataset(IRIS, 32).train][0].file;
    const native = readImage(file, 64);
    const half = readImage(file, 32);
    for (let r = 0; r < 32; r++) {
      for (let c = 0; c < 32; c++) {
        expect(half[r * 32 + c]).toBe(native[2 * r * 64 + 2 * c]);
      }
    }
  });

  test('gray levels scale to [0, 1]', () => {
    const dir = tempDir();
    const file = path.join(dir, 'gray.png');
    writePng(file, 8, 51);
    const pixels = readImage(file, 8);
    // float32 storage, so compare against the float32 rounding of 51/255
    for (const v of pixels) expect(v).toBe(Math.fround(51 / 255));
  });
});

describe('loadDataset failure modes', () => {
  test('missing directory raises a data error', () => {
    expect(() => loadDataset('/no/such/dir', 32)).toThrow(DataError);
  });

  test('a tree with no test split raises a data error', () => {
    const dir = tempDir();
    mkdirSync(path.join(dir, 'train', 'a'), { recursive: true });
    writePng(path.join(dir, 'train', 'a', '0.png'), 8, 128);
    expect(() => loadDataset(dir, 8)).toThrow(/test split is empty/);
  });

  test('an undecodable png raises a data error', () => {
    const dir = tempDir();
    mkdirSync(path.join(dir, 'train', 'a'), { recursive: true });
    mkdirSync(path.join(dir, 'test', 'a'), { recursive: true });
    writePng(path.join(dir, 'train', 'a', '0.png'), 8, 128);
    writeFileSync(path.join(dir, 'test', 'a', '0.png'), 'not a png');
    expect(() => loadDataset(dir, 8)).toThrow(DataError);
  });

  test('a manifest with a bad split value raises a data error', () => {
    const dir = tempDir();
    writeFileSync(
      path.join(dir, 'manifest.json'),
      JSON.stringify({ files: [{ path: 'x.png', label: 'a', split: 'validation' }] })
    );
    expect(() => loadDataset(dir, 8)).toThrow(/split/);
  });
});

/**
 * Error types that map onto the CLI exit codes.
 */

/** Bad flags, bad numbers, unknown optimizer. Exit code 2. */
export class ConfigError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'ConfigError';
  }
}

/** Missing or unreadable dataset, empty split, undecodable image. Exit code 3. */
export class DataError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'DataError';
  }
}

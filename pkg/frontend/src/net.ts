/** Request pacing: trailing debounce plus latest-wins reconciliation.
 *
 * Every interaction issues requests through one LatestWins instance per
 * stream; a response is applied only if no newer request has been issued
 * since, so the readouts always describe the most recent geometry.
 */

export class Debouncer {
  private handle: ReturnType<typeof setTimeout> | null = null;

  constructor(readonly delayMs: number) {}

  schedule(fn: () => void): void {
    if (this.handle !== null) {
      clearTimeout(this.handle);
    }
    this.handle = setTimeout(() => {
      this.handle = null;
      fn();
    }, this.delayMs);
  }

  cancel(): void {
    if (this.handle !== null) {
      clearTimeout(this.handle);
      this.handle = null;
    }
  }

  get pending(): boolean {
    return this.handle !== null;
  }
}

export class LatestWins {
  private issued = 0;
  private settled = 0;

  /** Sequence number of the most recently issued request. */
  get current(): number {
    return this.issued;
  }

  /** True while the newest request has not settled. */
  get inFlight(): boolean {
    return this.settled < this.issued;
  }

  run<T>(
    request: () => Promise<T>,
    apply: (value: T) => void,
    onError?: (error: unknown) => void,
  ): number {
    const seq = ++this.issued;
    request().then(
      (value) => {
        if (seq === this.issued) {
          this.settled = seq;
          apply(value);
        }
      },
      (error) => {
        if (seq === this.issued) {
          this.settled = seq;
          onError?.(error);
        }
      },
    );
    return seq;
  }
}

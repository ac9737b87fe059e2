// Out-of-order safety: responses carry server sequence numbers and the view
// never regresses to an older one.

export class SequenceGuard {
  private last = Number.NEGATIVE_INFINITY;

  /** True when this sequence number advances the view. */
  accept(seq: number): boolean {
    if (!Number.isFinite(seq) || seq <= this.last) {
      return false;
    }
    this.last = seq;
    return true;
  }

  get current(): number {
    return this.last;
  }

  reset(): void {
    this.last = Number.NEGATIVE_INFINITY;
  }
}

/** Request throttle: at most `maxPerSecond` acquisitions per sliding second. */
export class RateLimiter {
  private stamps: number[] = [];

  constructor(readonly maxPerSecond: number) {
    if (maxPerSecond <= 0) {
      throw new Error("maxPerSecond must be positive");
    }
  }

  tryAcquire(now: number): boolean {
    const cutoff = now - 1000;
    while (this.stamps.length > 0 && (this.stamps[0] as number) <= cutoff) {
      this.stamps.shift();
    }
    if (this.stamps.length >= this.maxPerSecond) {
      return false;
    }
    this.stamps.push(now);
    return true;
  }
}

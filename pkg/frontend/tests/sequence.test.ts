import { describe, expect, it } from "vitest";

import { RateLimiter, SequenceGuard } from "../src/sequence";

describe("SequenceGuard", () => {
  it("accepts strictly increasing sequence numbers", () => {
    const guard = new SequenceGuard();
    expect(guard.accept(1)).toBe(true);
    expect(guard.accept(2)).toBe(true);
    expect(guard.accept(5)).toBe(true);
  });

  it("drops stale and duplicate responses", () => {
    const guard = new SequenceGuard();
    expect(guard.accept(10)).toBe(true);
    expect(guard.accept(9)).toBe(false);
    expect(guard.accept(10)).toBe(false);
    expect(guard.current).toBe(10);
    expect(guard.accept(11)).toBe(true);
  });

  it("rejects non-finite sequence numbers", () => {
    const guard = new SequenceGuard();
    expect(guard.accept(Number.NaN)).toBe(false);
    expect(guard.accept(1)).toBe(true);
  });

  it("resets for a new session", () => {
    const guard = new SequenceGuard();
    guard.accept(42);
    guard.reset();
    expect(guard.accept(1)).toBe(true);
  });
});

describe("RateLimiter", () => {
  it("caps acquisitions per sliding second", () => {
    const limiter = new RateLimiter(60);
    let granted = 0;
    for (let i = 0; i < 100; i++) {
      if (limiter.tryAcquire(500 + i)) granted += 1;
    }
    expect(granted).toBe(60);
  });

  it("frees budget as the window slides", () => {
    const limiter = new RateLimiter(2);
    expect(limiter.tryAcquire(0)).toBe(true);
    expect(limiter.tryAcquire(10)).toBe(true);
    expect(limiter.tryAcquire(20)).toBe(false);
    expect(limiter.tryAcquire(1011)).toBe(true); // first stamp expired
  });

  it("rejects a non-positive budget", () => {
    expect(() => new RateLimiter(0)).toThrow();
  });
});

/** Fixed-capacity ring buffer; push evicts the oldest element. */
export class Ring<T> {
  private buf: (T | undefined)[];
  private head = 0; // index of the oldest element
  private count = 0;

  constructor(readonly capacity: number) {
    if (!Number.isInteger(capacity) || capacity < 1) {
      throw new RangeError("capacity must be a positive integer");
    }
    this.buf = new Array(capacity);
  }

  get length(): number {
    return this.count;
  }

  push(value: T): void {
    const tail = (this.head + this.count) % this.capacity;
    this.buf[tail] = value;
    if (this.count < this.capacity) {
      this.count += 1;
    } else {
      this.head = (this.head + 1) % this.capacity;
    }
  }

  /** i = 0 is the oldest retained element. */
  at(i: number): T {
    if (i < 0 || i >= this.count) throw new RangeError(`index ${i} out of range`);
    return this.buf[(this.head + i) % this.capacity] as T;
  }

  last(): T | undefined {
    return this.count ? this.at(this.count - 1) : undefined;
  }

  toArray(): T[] {
    const out: T[] = new Array(this.count);
    for (let i = 0; i < this.count; i += 1) out[i] = this.at(i);
    return out;
  }

  clear(): void {
    this.buf = new Array(this.capacity);
    this.head = 0;
    this.count = 0;
  }
}

/** Metric values are always displayed with two decimals (0.214 -> "0.21"). */
export function formatMetric(value: number): string {
  return value.toFixed(2);
}

export function formatTimestamp(iso: string): string {
  const date = new Date(iso);
  return Number.isNaN(date.getTime()) ? iso : date.toLocaleString();
}

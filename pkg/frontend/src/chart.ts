// 14-bucket partition bar chart, one column per feedback type. Empty
// buckets keep their column with a zero-height bar so the axis stays
// aligned with the picker.

export const FEEDBACK_LABELS = [
  '0B-0C', '0B-1C', '0B-2C', '0B-3C', '0B-4C',
  '1B-0C', '1B-1C', '1B-2C', '1B-3C',
  '2B-0C', '2B-1C', '2B-2C',
  '3B-0C',
  '4B-0C',
];

const BAR_MAX_PX = 120;

export function renderChart(container: HTMLElement, counts: number[]): void {
  container.textContent = '';
  const peak = Math.max(...counts, 1);
  counts.forEach((count, i) => {
    const col = document.createElement('div');
    col.className = 'chart-col';

    const value = document.createElement('span');
    value.className = 'chart-count';
    value.textContent = String(count);

    const bar = document.createElement('div');
    bar.className = 'chart-bar';
    bar.style.height = `${Math.round((count / peak) * BAR_MAX_PX)}px`;

    const label = document.createElement('span');
    label.className = 'chart-label';
    label.textContent = FEEDBACK_LABELS[i];

    col.append(value, bar, label);
    container.appendChild(col);
  });
}

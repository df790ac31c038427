import { createApp } from './app';

const root = document.getElementById('app')!;
const restoreId = window.location.hash.slice(1) || undefined;
createApp(root, restoreId);
